#pragma once

#include <cstdint>
#include <random>

namespace dnc {

// Seeded random source. A run owns one master Rng per seed and derives
// independent sub-streams with fork(); forking depends only on the original
// (seed, stream) pair, never on how much of the parent stream was consumed.
//
// All distribution transforms are implemented here (not via std::*_distribution)
// so that a given seed produces the same draws on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  Rng fork(std::uint64_t stream) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform01();
  double uniform(double lo, double hi);

  // Uniform index in {0, ..., n-1}; n must be > 0.
  std::size_t uniform_index(std::size_t n);

  // Standard normal via Box-Muller (pairs cached).
  double normal();

  // Poisson(lambda) by inversion of the product form; exact for the
  // moderate rates used here.
  long poisson(double lambda);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace dnc
