#pragma once

#include <cstddef>
#include <vector>

#include "dnc/linalg.hpp"

namespace dnc {

// Per-entry discrete grid defining the feasible action set: entry n takes the
// values a_min[n], a_min[n]+grid_step[n], ..., a_max[n]. c_min/c_max are the
// clip bounds applied to the actor's continuous output before scaling.
struct ActionSpaceSpec {
  std::size_t n_dims = 0;
  Vec64 a_min;
  Vec64 a_max;
  Vec64 grid_step;
  double c_min = -1.0;
  double c_max = 1.0;

  // Same bounds and step for every entry.
  static ActionSpaceSpec uniform(std::size_t n_dims, double lo, double hi, double step,
                                 double c_min = -1.0, double c_max = 1.0);

  void validate() const;

  // Number of grid intervals along a dimension ((a_max-a_min)/step).
  std::size_t steps_along(std::size_t dim) const;

  // Nearest grid value to y along dim; ties round half away from zero.
  // The result is clamped into [a_min, a_max].
  double snap(double y, std::size_t dim) const;
  Vec64 snap(const Vec64& y) const;

  bool on_grid(const Vec64& a, double tol = 1e-9) const;

  // Total number of grid actions, as a double (may overflow to huge/inf).
  double cardinality() const;

  // L2 diameter of the feasible box.
  double diameter() const;
};

double clip(double x, double c_min, double c_max);

// The affine part of g: clip to [c_min,c_max], normalize, scale into
// [a_min,a_max]. No rounding.
Vec64 scale_to_range(const Vec64& a_hat, const ActionSpaceSpec& spec);

// g itself: scale_to_range followed by snapping each entry to the grid.
Vec64 discretize_base(const Vec64& a_hat, const ActionSpaceSpec& spec);

// All grid actions in lexicographic order. Throws CardinalityExceeded when
// the grid holds more than `limit` actions.
std::vector<Vec64> enumerate_action_space(const ActionSpaceSpec& spec, std::size_t limit);

}  // namespace dnc
