#include "dnc/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {
namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBoundsTol = 1e-9;
}  // namespace

void FourierBasisConfig::validate() const {
  if (order < 1) throw std::invalid_argument("fourier: order must be >= 1");
  if (input_bounds.size() != input_dim) {
    throw std::invalid_argument("fourier: bounds size != input_dim");
  }
  for (const auto& [lo, hi] : input_bounds) {
    if (!(lo < hi)) throw std::invalid_argument("fourier: bound low >= high");
  }
}

std::size_t fourier_feature_count(const FourierBasisConfig& cfg) {
  if (cfg.coupled) {
    std::size_t n = 1;
    for (std::size_t m = 0; m < cfg.input_dim; ++m) n *= cfg.order + 1;
    return n;
  }
  return 1 + cfg.order * cfg.input_dim;
}

Vec64 fourier_features(const Vec64& state, const FourierBasisConfig& cfg) {
  if (state.size() != cfg.input_dim) {
    throw std::invalid_argument("fourier_features: state dimension mismatch");
  }
  Vec64 norm(cfg.input_dim);
  for (std::size_t m = 0; m < cfg.input_dim; ++m) {
    const auto [lo, hi] = cfg.input_bounds[m];
    double x = state[m];
    if (x < lo - kBoundsTol || x > hi + kBoundsTol) {
      throw std::invalid_argument("fourier_features: state outside bounds");
    }
    if (x < lo) x = lo;
    if (x > hi) x = hi;
    norm[m] = (x - lo) / (hi - lo);
  }

  Vec64 out;
  if (cfg.coupled) {
    out.resize(fourier_feature_count(cfg));
    // Odometer over coefficient vectors c in {0..order}^M, last dim fastest.
    std::vector<std::size_t> c(cfg.input_dim, 0);
    for (std::size_t f = 0; f < out.size(); ++f) {
      double phase = 0.0;
      for (std::size_t m = 0; m < cfg.input_dim; ++m) {
        phase += static_cast<double>(c[m]) * norm[m];
      }
      out[f] = std::cos(kPi * phase);
      for (std::size_t m = cfg.input_dim; m-- > 0;) {
        if (++c[m] <= cfg.order) break;
        c[m] = 0;
      }
    }
  } else {
    out.reserve(fourier_feature_count(cfg));
    out.push_back(1.0);
    for (std::size_t m = 0; m < cfg.input_dim; ++m) {
      for (std::size_t k = 1; k <= cfg.order; ++k) {
        out.push_back(std::cos(kPi * static_cast<double>(k) * norm[m]));
      }
    }
  }
  return out;
}

}  // namespace dnc
