#pragma once

#include "dnc/linalg.hpp"
#include "dnc/rng.hpp"

namespace dnc {

// Diagonal Gaussian over action entries. sigma entries must be > 0.
struct GaussianPolicyParams {
  Vec64 mu;
  Vec64 sigma;
};

// Entry-wise mu_n + sigma_n * z with independent standard normals.
Vec64 gaussian_sample(const GaussianPolicyParams& p, Rng& rng);

struct GaussianLogProb {
  double logp = 0.0;
  Vec64 dlogp_dmu;
  Vec64 dlogp_dsigma;
};

GaussianLogProb gaussian_log_prob_grad(const GaussianPolicyParams& p, const Vec64& a_hat);

}  // namespace dnc
