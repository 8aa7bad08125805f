#pragma once

#include <cstddef>

#include "dnc/gaussian.hpp"
#include "dnc/linalg.hpp"
#include "dnc/mlp.hpp"
#include "dnc/rng.hpp"

namespace dnc {

enum class SigmaMode { Constant, Learned };

// Turns raw actor outputs into Gaussian policy parameters. The mean passes
// through tanh (the actor's bounded output layer); in learned mode a second
// block of raw outputs passes through softplus to keep sigma positive, with
// a 1e-6 floor against underflow.
struct GaussianHead {
  std::size_t n_action_dims = 0;
  SigmaMode sigma_mode = SigmaMode::Constant;
  double sigma_value = 1.0;

  std::size_t raw_dim() const {
    return sigma_mode == SigmaMode::Learned ? 2 * n_action_dims : n_action_dims;
  }

  GaussianPolicyParams forward(const Vec64& raw) const;

  // Chains d(objective)/d(mu, sigma) back to the raw actor outputs.
  Vec64 backward(const Vec64& raw, const GaussianPolicyParams& params,
                 const Vec64& dmu, const Vec64& dsigma) const;
};

double softplus(double x);

// Numerically stable softmax.
Vec64 softmax(const Vec64& logits);
std::size_t sample_categorical(const Vec64& probs, Rng& rng);
std::size_t argmax_index(const Vec64& v);

}  // namespace dnc
