#include "dnc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

Rng Rng::fork(std::uint64_t stream) const {
  // Derived streams are keyed off the master seed only, so fork order and
  // parent consumption do not matter.
  return Rng(seed_, splitmix64(stream_ * 0x2545f4914f6cdd1dULL) ^ stream);
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  // Rejection-free modulo bias is negligible for the small n used here,
  // but keep it exact anyway.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(kTwoPi * u2);
  has_cached_normal_ = true;
  return r * std::cos(kTwoPi * u2);
}

long Rng::poisson(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson: negative rate");
  if (lambda == 0.0) return 0;
  // Knuth's product method, split into chunks so exp(-lambda) never
  // underflows for the rates we simulate.
  long k = 0;
  double remaining = lambda;
  while (remaining > 0.0) {
    const double chunk = remaining > 500.0 ? 500.0 : remaining;
    const double limit = std::exp(-chunk);
    double p = 1.0;
    long kc = -1;
    do {
      ++kc;
      p *= uniform01();
    } while (p > limit);
    k += kc;
    remaining -= chunk;
  }
  return k;
}

}  // namespace dnc
