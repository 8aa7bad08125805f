#include "dnc/action_space.hpp"

#include <cmath>
#include <stdexcept>

#include "dnc/errors.hpp"

namespace dnc {
namespace {
constexpr double kGridTol = 1e-9;
}

ActionSpaceSpec ActionSpaceSpec::uniform(std::size_t n_dims, double lo, double hi,
                                         double step, double c_min, double c_max) {
  ActionSpaceSpec s;
  s.n_dims = n_dims;
  s.a_min.assign(n_dims, lo);
  s.a_max.assign(n_dims, hi);
  s.grid_step.assign(n_dims, step);
  s.c_min = c_min;
  s.c_max = c_max;
  s.validate();
  return s;
}

void ActionSpaceSpec::validate() const {
  if (n_dims == 0) throw std::invalid_argument("action spec: n_dims must be >= 1");
  if (a_min.size() != n_dims || a_max.size() != n_dims || grid_step.size() != n_dims) {
    throw std::invalid_argument("action spec: per-entry field size mismatch");
  }
  if (!(c_min < c_max)) throw std::invalid_argument("action spec: c_min >= c_max");
  for (std::size_t n = 0; n < n_dims; ++n) {
    if (!(a_min[n] < a_max[n])) throw std::invalid_argument("action spec: a_min >= a_max");
    if (!(grid_step[n] > 0.0)) throw std::invalid_argument("action spec: grid_step <= 0");
    const double k = (a_max[n] - a_min[n]) / grid_step[n];
    if (std::abs(k - std::round(k)) > kGridTol) {
      throw std::invalid_argument("action spec: range not a multiple of grid_step");
    }
  }
}

std::size_t ActionSpaceSpec::steps_along(std::size_t dim) const {
  return static_cast<std::size_t>(std::llround((a_max[dim] - a_min[dim]) / grid_step[dim]));
}

double ActionSpaceSpec::snap(double y, std::size_t dim) const {
  double k = std::round((y - a_min[dim]) / grid_step[dim]);
  if (k < 0.0) k = 0.0;
  const double k_max = static_cast<double>(steps_along(dim));
  if (k > k_max) k = k_max;
  return a_min[dim] + k * grid_step[dim];
}

Vec64 ActionSpaceSpec::snap(const Vec64& y) const {
  if (y.size() != n_dims) throw std::invalid_argument("snap: dimension mismatch");
  Vec64 out(n_dims);
  for (std::size_t n = 0; n < n_dims; ++n) out[n] = snap(y[n], n);
  return out;
}

bool ActionSpaceSpec::on_grid(const Vec64& a, double tol) const {
  if (a.size() != n_dims) return false;
  for (std::size_t n = 0; n < n_dims; ++n) {
    if (a[n] < a_min[n] - tol || a[n] > a_max[n] + tol) return false;
    const double k = (a[n] - a_min[n]) / grid_step[n];
    if (std::abs(k - std::round(k)) > tol) return false;
  }
  return true;
}

double ActionSpaceSpec::cardinality() const {
  double c = 1.0;
  for (std::size_t n = 0; n < n_dims; ++n) {
    c *= static_cast<double>(steps_along(n) + 1);
  }
  return c;
}

double ActionSpaceSpec::diameter() const {
  double s = 0.0;
  for (std::size_t n = 0; n < n_dims; ++n) {
    const double d = a_max[n] - a_min[n];
    s += d * d;
  }
  return std::sqrt(s);
}

double clip(double x, double c_min, double c_max) {
  if (x < c_min) return c_min;
  if (x > c_max) return c_max;
  return x;
}

Vec64 scale_to_range(const Vec64& a_hat, const ActionSpaceSpec& spec) {
  if (a_hat.size() != spec.n_dims) {
    throw std::invalid_argument("scale_to_range: dimension mismatch");
  }
  Vec64 y(spec.n_dims);
  for (std::size_t n = 0; n < spec.n_dims; ++n) {
    const double t = (clip(a_hat[n], spec.c_min, spec.c_max) - spec.c_min) /
                     (spec.c_max - spec.c_min);
    y[n] = t * (spec.a_max[n] - spec.a_min[n]) + spec.a_min[n];
  }
  return y;
}

Vec64 discretize_base(const Vec64& a_hat, const ActionSpaceSpec& spec) {
  return spec.snap(scale_to_range(a_hat, spec));
}

std::vector<Vec64> enumerate_action_space(const ActionSpaceSpec& spec, std::size_t limit) {
  const double card = spec.cardinality();
  if (!(card <= static_cast<double>(limit))) {
    throw CardinalityExceeded("action space holds " + std::to_string(card) +
                              " actions, limit " + std::to_string(limit));
  }
  const std::size_t total = static_cast<std::size_t>(card);
  std::vector<Vec64> out;
  out.reserve(total);
  std::vector<std::size_t> idx(spec.n_dims, 0);
  Vec64 a(spec.n_dims);
  for (std::size_t n = 0; n < spec.n_dims; ++n) a[n] = spec.a_min[n];
  for (std::size_t i = 0; i < total; ++i) {
    out.push_back(a);
    // Odometer, last dimension fastest: lexicographic order.
    for (std::size_t n = spec.n_dims; n-- > 0;) {
      if (++idx[n] <= spec.steps_along(n)) {
        a[n] = spec.a_min[n] + static_cast<double>(idx[n]) * spec.grid_step[n];
        break;
      }
      idx[n] = 0;
      a[n] = spec.a_min[n];
    }
  }
  return out;
}

}  // namespace dnc
