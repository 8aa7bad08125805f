#include "dnc/neighborhood.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {

void PerturbationParams::validate(const ActionSpaceSpec& spec) const {
  if (depth < 1) throw std::invalid_argument("perturbation: depth must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("perturbation: epsilon must be > 0");
  for (std::size_t n = 0; n < spec.n_dims; ++n) {
    const double k = epsilon / spec.grid_step[n];
    if (std::abs(k - std::round(k)) > 1e-9) {
      throw std::invalid_argument("perturbation: epsilon not a multiple of grid_step");
    }
  }
}

Mat64 perturbation_matrix(std::size_t n_dims, const PerturbationParams& params) {
  if (n_dims == 0) throw std::invalid_argument("perturbation_matrix: n_dims must be >= 1");
  const std::size_t d = params.depth;
  Mat64 p(n_dims, 2 * d * n_dims);
  for (std::size_t j = 1; j <= 2 * d * n_dims; ++j) {
    const std::size_t level = (j - 1) / n_dims;  // floor((j-1)/N)
    const std::size_t i = (j - 1) % n_dims;      // row with the non-zero entry
    const double value = level < d
                             ? params.epsilon * static_cast<double>(level + 1)
                             : -params.epsilon * static_cast<double>(level + 1 - d);
    p.at(i, j - 1) = value;
  }
  return p;
}

Neighborhood generate_neighbors(const Vec64& base, const ActionSpaceSpec& spec,
                                const PerturbationParams& params) {
  if (base.size() != spec.n_dims) {
    throw std::invalid_argument("generate_neighbors: base dimension mismatch");
  }
  if (!spec.on_grid(base)) {
    throw std::invalid_argument("generate_neighbors: base not on the action grid");
  }
  params.validate(spec);

  Neighborhood nbh;
  nbh.base = base;
  nbh.candidates.push_back(base);

  const Mat64 p = perturbation_matrix(spec.n_dims, params);
  Vec64 cand(spec.n_dims);
  for (std::size_t j = 0; j < p.cols; ++j) {
    for (std::size_t n = 0; n < spec.n_dims; ++n) {
      cand[n] = spec.snap(base[n] + p.at(n, j), n);
    }
    bool duplicate = false;
    for (const Vec64& seen : nbh.candidates) {
      if (seen == cand) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) nbh.candidates.push_back(cand);
  }
  return nbh;
}

double lipschitz_estimate(const Neighborhood& nbh) {
  if (nbh.q_values.size() != nbh.candidates.size()) {
    throw std::invalid_argument("lipschitz_estimate: q_values not set");
  }
  double best = -1.0;
  for (std::size_t i = 0; i < nbh.candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < nbh.candidates.size(); ++j) {
      const double dist = l2_distance(nbh.candidates[i], nbh.candidates[j]);
      if (dist == 0.0) continue;
      const double ratio = std::abs(nbh.q_values[i] - nbh.q_values[j]) / dist;
      if (ratio > best) best = ratio;
    }
  }
  if (best < 0.0) {
    throw std::invalid_argument("lipschitz_estimate: fewer than 2 distinct candidates");
  }
  return best;
}

}  // namespace dnc
