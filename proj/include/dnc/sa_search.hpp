#pragma once

#include <cstddef>

#include "dnc/action_space.hpp"
#include "dnc/neighborhood.hpp"
#include "dnc/qoracle.hpp"
#include "dnc/rng.hpp"

namespace dnc {

// Probability of accepting a non-improving candidate with Q-gap dq >= 0 at
// temperature beta. Metropolis is exp(-dq/beta); Complement is the published
// prose variant 1 - exp(-dq/beta). The two disagree in the source material;
// Metropolis (the pseudocode form) is the default.
enum class AcceptanceForm { Metropolis, Complement };

struct SaParams {
  // Initial k as a fraction of the candidate count |A'|.
  double k_init_fraction = 0.1;
  double beta_init = 0.99;
  // Per-iteration decrement of k and beta as a fraction of their initial
  // values; the search therefore runs ~ceil(1/cooling_fraction) iterations.
  double cooling_fraction = 0.25;
  std::size_t max_iters = 100;
  AcceptanceForm acceptance_form = AcceptanceForm::Metropolis;

  void validate() const;
};

// Simulated-annealing walk over dynamically constructed neighborhoods.
// Starts from the base action g(a_hat), repeatedly scores the neighborhood of
// the current base with the oracle, greedily accepts improving candidates,
// occasionally accepts worse ones, and falls back to a uniformly random
// previously seen action otherwise. Returns the best action found; its
// Q-value is never below Q(g(a_hat)).
Vec64 sa_search(const Vec64& state, const Vec64& a_hat, const QOracle& oracle,
                const ActionSpaceSpec& spec, const PerturbationParams& pparams,
                const SaParams& sparams, Rng& rng);

}  // namespace dnc
