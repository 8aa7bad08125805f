#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dnc/linalg.hpp"

namespace dnc {

// Cosine feature expansion of a normalized state vector.
struct FourierBasisConfig {
  std::size_t order = 3;
  bool coupled = true;
  std::size_t input_dim = 0;
  std::vector<std::pair<double, double>> input_bounds;  // (low, high) per dim

  void validate() const;
};

// Number of features produced: (order+1)^M coupled, 1 + order*M decoupled.
std::size_t fourier_feature_count(const FourierBasisConfig& cfg);

// Normalizes the state to [0,1] per dimension and expands it. States outside
// the bounds by at most 1e-9 are clamped; larger violations throw.
Vec64 fourier_features(const Vec64& state, const FourierBasisConfig& cfg);

}  // namespace dnc
