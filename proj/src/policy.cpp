#include "dnc/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {
namespace {
constexpr double kSigmaFloor = 1e-6;
}

double softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

GaussianPolicyParams GaussianHead::forward(const Vec64& raw) const {
  if (raw.size() != raw_dim()) {
    throw std::invalid_argument("GaussianHead: raw output size mismatch");
  }
  GaussianPolicyParams p;
  p.mu.resize(n_action_dims);
  p.sigma.resize(n_action_dims);
  for (std::size_t n = 0; n < n_action_dims; ++n) {
    p.mu[n] = std::tanh(raw[n]);
    p.sigma[n] = sigma_mode == SigmaMode::Learned
                     ? softplus(raw[n_action_dims + n]) + kSigmaFloor
                     : sigma_value;
  }
  return p;
}

Vec64 GaussianHead::backward(const Vec64& raw, const GaussianPolicyParams& params,
                             const Vec64& dmu, const Vec64& dsigma) const {
  Vec64 draw(raw_dim(), 0.0);
  for (std::size_t n = 0; n < n_action_dims; ++n) {
    draw[n] = dmu[n] * (1.0 - params.mu[n] * params.mu[n]);
  }
  if (sigma_mode == SigmaMode::Learned) {
    for (std::size_t n = 0; n < n_action_dims; ++n) {
      // d softplus(x)/dx = sigmoid(x)
      const double x = raw[n_action_dims + n];
      const double sig = 1.0 / (1.0 + std::exp(-x));
      draw[n_action_dims + n] = dsigma[n] * sig;
    }
  }
  return draw;
}

Vec64 softmax(const Vec64& logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty input");
  double mx = logits[0];
  for (double x : logits) mx = x > mx ? x : mx;
  Vec64 p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

std::size_t sample_categorical(const Vec64& probs, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

std::size_t argmax_index(const Vec64& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace dnc
