#pragma once

#include <cstddef>
#include <vector>

#include "dnc/action_space.hpp"
#include "dnc/linalg.hpp"

namespace dnc {

// Neighborhood depth d and per-level scale epsilon. epsilon must be an
// integer multiple of the grid step so perturbed actions stay on the grid.
struct PerturbationParams {
  std::size_t depth = 1;
  double epsilon = 1.0;

  void validate(const ActionSpaceSpec& spec) const;
};

// N x 2dN matrix whose columns are single-entry perturbations: the first dN
// columns add +epsilon, +2 epsilon, ..., +d epsilon to one entry, the last dN
// columns the matching negative perturbations.
Mat64 perturbation_matrix(std::size_t n_dims, const PerturbationParams& params);

// A discrete base action plus its perturbed candidates. candidates[0] is the
// base; q_values stays empty until an oracle scores the set.
struct Neighborhood {
  Vec64 base;
  std::vector<Vec64> candidates;
  Vec64 q_values;
};

// Adds each perturbation column to the base, clamps out-of-bound entries back
// onto the feasible grid, and drops exact duplicates.
Neighborhood generate_neighbors(const Vec64& base, const ActionSpaceSpec& spec,
                                const PerturbationParams& params);

// Largest |Q(a) - Q(a')| / ||a - a'|| over distinct candidate pairs; the
// tightest constant certifying |dQ| <= L * distance within the neighborhood.
double lipschitz_estimate(const Neighborhood& nbh);

}  // namespace dnc
