#include "dnc/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {
namespace {
// 0.5 * ln(2*pi)
constexpr double kHalfLogTwoPi = 0.91893853320467274178;

void check(const GaussianPolicyParams& p) {
  if (p.mu.size() != p.sigma.size()) {
    throw std::invalid_argument("gaussian: mu/sigma size mismatch");
  }
  for (double s : p.sigma) {
    if (!(s > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  }
}
}  // namespace

Vec64 gaussian_sample(const GaussianPolicyParams& p, Rng& rng) {
  check(p);
  Vec64 a(p.mu.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    a[n] = p.mu[n] + p.sigma[n] * rng.normal();
  }
  return a;
}

GaussianLogProb gaussian_log_prob_grad(const GaussianPolicyParams& p, const Vec64& a_hat) {
  check(p);
  if (a_hat.size() != p.mu.size()) {
    throw std::invalid_argument("gaussian_log_prob_grad: action size mismatch");
  }
  GaussianLogProb out;
  out.dlogp_dmu.resize(p.mu.size());
  out.dlogp_dsigma.resize(p.mu.size());
  for (std::size_t n = 0; n < p.mu.size(); ++n) {
    const double s = p.sigma[n];
    const double z = (a_hat[n] - p.mu[n]) / s;
    out.logp += -0.5 * z * z - std::log(s) - kHalfLogTwoPi;
    out.dlogp_dmu[n] = z / s;
    out.dlogp_dsigma[n] = (z * z - 1.0) / s;
  }
  return out;
}

}  // namespace dnc
