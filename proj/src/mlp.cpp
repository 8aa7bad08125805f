#include "dnc/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {

MlpParams make_mlp(const std::vector<std::size_t>& layer_sizes,
                   OutputActivation output_activation, Rng& rng) {
  if (layer_sizes.size() < 2) {
    throw std::invalid_argument("make_mlp: need at least input and output layer");
  }
  MlpParams p;
  p.layer_sizes = layer_sizes;
  p.output_activation = output_activation;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const std::size_t in = layer_sizes[l];
    const std::size_t out = layer_sizes[l + 1];
    if (in == 0 || out == 0) throw std::invalid_argument("make_mlp: zero-sized layer");
    Mat64 w(out, in);
    const double scale = 1.0 / std::sqrt(static_cast<double>(in));
    for (double& x : w.values) x = rng.uniform(-scale, scale);
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(out, 0.0);
  }
  return p;
}

std::vector<std::size_t> layer_sizes_from_nodes(std::size_t input, std::size_t nodes,
                                                std::size_t output) {
  if (nodes == 0) return {input, output};
  return {input, nodes, nodes, output};
}

Vec64 mlp_forward(const MlpParams& p, const Vec64& x, MlpCache* cache) {
  if (x.size() != p.input_dim()) {
    throw std::invalid_argument("mlp_forward: input dimension mismatch");
  }
  if (cache) {
    cache->input = x;
    cache->pre.assign(p.n_layers(), {});
    cache->post.assign(p.n_layers(), {});
  }
  Vec64 act = x;
  for (std::size_t l = 0; l < p.n_layers(); ++l) {
    const Mat64& w = p.weights[l];
    const Vec64& b = p.biases[l];
    Vec64 z(w.rows);
    for (std::size_t i = 0; i < w.rows; ++i) {
      const double* row = w.row(i);
      double s = b[i];
      for (std::size_t j = 0; j < w.cols; ++j) s += row[j] * act[j];
      z[i] = s;
    }
    if (cache) cache->pre[l] = z;
    const bool last = (l + 1 == p.n_layers());
    Vec64 a(z.size());
    if (!last) {
      for (std::size_t i = 0; i < z.size(); ++i) a[i] = z[i] > 0.0 ? z[i] : 0.0;
    } else if (p.output_activation == OutputActivation::Tanh) {
      for (std::size_t i = 0; i < z.size(); ++i) a[i] = std::tanh(z[i]);
    } else {
      a = z;
    }
    if (cache) cache->post[l] = a;
    act = std::move(a);
  }
  return act;
}

MlpGrad mlp_grad(const MlpParams& p, const MlpCache& cache, const Vec64& upstream) {
  if (upstream.size() != p.output_dim()) {
    throw std::invalid_argument("mlp_grad: upstream dimension mismatch");
  }
  if (cache.pre.size() != p.n_layers() || cache.input.size() != p.input_dim()) {
    throw std::invalid_argument("mlp_grad: cache does not match parameters");
  }
  MlpGrad g;
  g.d_weights.resize(p.n_layers());
  g.d_biases.resize(p.n_layers());

  // delta = d(objective)/d(pre-activation) for the current layer.
  Vec64 delta(upstream.size());
  const std::size_t last = p.n_layers() - 1;
  if (p.output_activation == OutputActivation::Tanh) {
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const double t = cache.post[last][i];
      delta[i] = upstream[i] * (1.0 - t * t);
    }
  } else {
    delta = upstream;
  }

  for (std::size_t l = last + 1; l-- > 0;) {
    const Vec64& in = (l == 0) ? cache.input : cache.post[l - 1];
    const Mat64& w = p.weights[l];
    Mat64 dw(w.rows, w.cols);
    for (std::size_t i = 0; i < w.rows; ++i) {
      double* drow = dw.row(i);
      const double di = delta[i];
      for (std::size_t j = 0; j < w.cols; ++j) drow[j] = di * in[j];
    }
    g.d_weights[l] = std::move(dw);
    g.d_biases[l] = delta;

    if (l > 0) {
      Vec64 prev(w.cols, 0.0);
      for (std::size_t i = 0; i < w.rows; ++i) {
        const double* row = w.row(i);
        const double di = delta[i];
        for (std::size_t j = 0; j < w.cols; ++j) prev[j] += row[j] * di;
      }
      // ReLU gate of the previous hidden layer.
      for (std::size_t j = 0; j < prev.size(); ++j) {
        if (cache.pre[l - 1][j] <= 0.0) prev[j] = 0.0;
      }
      delta = std::move(prev);
    }
  }
  return g;
}

void sgd_step(MlpParams& p, const MlpGrad& grad, double lr) {
  if (lr < 0.0) throw std::invalid_argument("sgd_step: negative learning rate");
  if (grad.d_weights.size() != p.n_layers()) {
    throw std::invalid_argument("sgd_step: gradient shape mismatch");
  }
  for (std::size_t l = 0; l < p.n_layers(); ++l) {
    require_finite(grad.d_weights[l].values, "sgd_step: weight gradient");
    require_finite(grad.d_biases[l], "sgd_step: bias gradient");
    if (grad.d_weights[l].rows != p.weights[l].rows ||
        grad.d_weights[l].cols != p.weights[l].cols ||
        grad.d_biases[l].size() != p.biases[l].size()) {
      throw std::invalid_argument("sgd_step: gradient shape mismatch");
    }
    for (std::size_t i = 0; i < p.weights[l].values.size(); ++i) {
      p.weights[l].values[i] -= lr * grad.d_weights[l].values[i];
    }
    for (std::size_t i = 0; i < p.biases[l].size(); ++i) {
      p.biases[l][i] -= lr * grad.d_biases[l][i];
    }
  }
}

std::size_t parameter_count(const MlpParams& p) {
  std::size_t n = 0;
  for (std::size_t l = 0; l < p.n_layers(); ++l) {
    n += p.weights[l].values.size() + p.biases[l].size();
  }
  return n;
}

}  // namespace dnc
