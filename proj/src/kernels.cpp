#include "dnc/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace dnc {

namespace parallel {
namespace {
int g_threads = 0;
}

void set_thread_count(int n) { g_threads = n < 0 ? 0 : n; }

int thread_count() { return g_threads == 0 ? omp_get_max_threads() : g_threads; }

bool enabled() { return thread_count() > 1; }

}  // namespace parallel

namespace {

// Per-candidate forward pass. scratch_a/scratch_b must hold the widest layer.
double critic_eval_one(const MlpParams& critic, const Vec64& state_part,
                       const ActionSpaceSpec& spec, const Vec64& action,
                       double* scratch_a, double* scratch_b) {
  const Mat64& w0 = critic.weights[0];
  const std::size_t n_feats = w0.cols - spec.n_dims;
  const std::size_t n_layers = critic.n_layers();

  // First layer: hoisted state part plus the action columns.
  double* act = scratch_a;
  for (std::size_t i = 0; i < w0.rows; ++i) {
    const double* row = w0.row(i) + n_feats;
    double s = state_part[i];
    for (std::size_t n = 0; n < spec.n_dims; ++n) {
      const double anorm = (action[n] - spec.a_min[n]) / (spec.a_max[n] - spec.a_min[n]);
      s += row[n] * anorm;
    }
    act[i] = (n_layers == 1) ? s : (s > 0.0 ? s : 0.0);
  }

  double* next = scratch_b;
  for (std::size_t l = 1; l < n_layers; ++l) {
    const Mat64& w = critic.weights[l];
    const Vec64& b = critic.biases[l];
    const bool last = (l + 1 == n_layers);
    for (std::size_t i = 0; i < w.rows; ++i) {
      const double* row = w.row(i);
      double s = b[i];
      for (std::size_t j = 0; j < w.cols; ++j) s += row[j] * act[j];
      next[i] = last ? s : (s > 0.0 ? s : 0.0);
    }
    double* tmp = act;
    act = next;
    next = tmp;
  }
  return act[0];
}

std::size_t max_layer_width(const MlpParams& p) {
  std::size_t w = 1;
  for (std::size_t s : p.layer_sizes) {
    if (s > w) w = s;
  }
  return w;
}

void check_critic_batch_args(const MlpParams& critic, const Vec64& state_part,
                             const ActionSpaceSpec& spec) {
  if (critic.output_dim() != 1) {
    throw std::invalid_argument("critic_batch_eval: critic output must be scalar");
  }
  if (critic.output_activation != OutputActivation::Identity) {
    throw std::invalid_argument("critic_batch_eval: critic output must be unbounded");
  }
  if (critic.weights[0].cols < spec.n_dims) {
    throw std::invalid_argument("critic_batch_eval: critic input smaller than action");
  }
  if (state_part.size() != critic.weights[0].rows) {
    throw std::invalid_argument("critic_batch_eval: state_part size mismatch");
  }
}

}  // namespace

Vec64 critic_state_part(const MlpParams& critic, const Vec64& feats) {
  const Mat64& w0 = critic.weights[0];
  if (feats.size() > w0.cols) {
    throw std::invalid_argument("critic_state_part: feature size mismatch");
  }
  Vec64 u(w0.rows);
  for (std::size_t i = 0; i < w0.rows; ++i) {
    const double* row = w0.row(i);
    double s = critic.biases[0][i];
    for (std::size_t j = 0; j < feats.size(); ++j) s += row[j] * feats[j];
    u[i] = s;
  }
  return u;
}

void critic_batch_eval_serial(const MlpParams& critic, const Vec64& state_part,
                              const ActionSpaceSpec& spec,
                              const std::vector<Vec64>& actions, Vec64& q_out) {
  check_critic_batch_args(critic, state_part, spec);
  q_out.resize(actions.size());
  const std::size_t width = max_layer_width(critic);
  Vec64 scratch(2 * width);
  for (std::size_t c = 0; c < actions.size(); ++c) {
    q_out[c] = critic_eval_one(critic, state_part, spec, actions[c], scratch.data(),
                               scratch.data() + width);
  }
}

void critic_batch_eval_omp(const MlpParams& critic, const Vec64& state_part,
                           const ActionSpaceSpec& spec,
                           const std::vector<Vec64>& actions, Vec64& q_out) {
  check_critic_batch_args(critic, state_part, spec);
  q_out.resize(actions.size());
  const std::size_t width = max_layer_width(critic);
  const long n = static_cast<long>(actions.size());
#pragma omp parallel num_threads(parallel::thread_count())
  {
    Vec64 scratch(2 * width);
#pragma omp for schedule(static)
    for (long c = 0; c < n; ++c) {
      q_out[c] = critic_eval_one(critic, state_part, spec, actions[c], scratch.data(),
                                 scratch.data() + width);
    }
  }
}

void critic_batch_eval(const MlpParams& critic, const Vec64& state_part,
                       const ActionSpaceSpec& spec,
                       const std::vector<Vec64>& actions, Vec64& q_out) {
  if (parallel::enabled() && actions.size() >= 64) {
    critic_batch_eval_omp(critic, state_part, spec, actions, q_out);
  } else {
    critic_batch_eval_serial(critic, state_part, spec, actions, q_out);
  }
}

void squared_distance_scan_serial(const std::vector<Vec64>& points, const Vec64& query,
                                  Vec64& out) {
  out.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = squared_distance(points[i], query);
  }
}

void squared_distance_scan_omp(const std::vector<Vec64>& points, const Vec64& query,
                               Vec64& out) {
  out.resize(points.size());
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
  for (long i = 0; i < n; ++i) {
    out[i] = squared_distance(points[i], query);
  }
}

void squared_distance_scan(const std::vector<Vec64>& points, const Vec64& query,
                           Vec64& out) {
  if (parallel::enabled() && points.size() >= 256) {
    squared_distance_scan_omp(points, query, out);
  } else {
    squared_distance_scan_serial(points, query, out);
  }
}

namespace {

void similarity_row(const Mat64& rows, const Vec64& norms, std::size_t i, Mat64& sim) {
  sim.at(i, i) = 1.0;
  const double* ri = rows.row(i);
  for (std::size_t j = i + 1; j < rows.rows; ++j) {
    const double* rj = rows.row(j);
    double s = 0.0;
    for (std::size_t f = 0; f < rows.cols; ++f) s += ri[f] * rj[f];
    const double v = s / (norms[i] * norms[j]);
    sim.at(i, j) = v;
    sim.at(j, i) = v;
  }
}

Vec64 row_norms(const Mat64& rows) {
  Vec64 norms(rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    const double* r = rows.row(i);
    double s = 0.0;
    for (std::size_t f = 0; f < rows.cols; ++f) s += r[f] * r[f];
    norms[i] = std::sqrt(s);
    if (norms[i] == 0.0) {
      throw std::invalid_argument("cosine_similarity_matrix: zero row");
    }
  }
  return norms;
}

}  // namespace

Mat64 cosine_similarity_matrix_serial(const Mat64& rows) {
  const Vec64 norms = row_norms(rows);
  Mat64 sim(rows.rows, rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) similarity_row(rows, norms, i, sim);
  return sim;
}

Mat64 cosine_similarity_matrix_omp(const Mat64& rows) {
  const Vec64 norms = row_norms(rows);
  Mat64 sim(rows.rows, rows.rows);
  const long n = static_cast<long>(rows.rows);
#pragma omp parallel for schedule(dynamic, 16) num_threads(parallel::thread_count())
  for (long i = 0; i < n; ++i) {
    similarity_row(rows, norms, static_cast<std::size_t>(i), sim);
  }
  return sim;
}

Mat64 cosine_similarity_matrix(const Mat64& rows) {
  if (parallel::enabled() && rows.rows >= 128) {
    return cosine_similarity_matrix_omp(rows);
  }
  return cosine_similarity_matrix_serial(rows);
}

}  // namespace dnc
