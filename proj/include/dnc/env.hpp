#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dnc/action_space.hpp"
#include "dnc/linalg.hpp"
#include "dnc/rng.hpp"

namespace dnc {

struct StepResult {
  Vec64 next_state;
  double reward = 0.0;
  bool done = false;
};

// Benchmark MDP contract. Transitions are pure functions of
// (state, action, rng draws); the training loop enforces the horizon by
// forcing done after horizon() steps.
class EnvContract {
 public:
  virtual ~EnvContract() = default;
  virtual Vec64 reset(Rng& rng) const = 0;
  virtual StepResult step(const Vec64& state, const Vec64& action, Rng& rng) const = 0;
  virtual const ActionSpaceSpec& action_spec() const = 0;
  virtual std::size_t state_dim() const = 0;
  // Bounds used to normalize states for the feature basis; states are
  // clamped into them before featurization.
  virtual std::vector<std::pair<double, double>> state_bounds() const = 0;
  virtual std::size_t horizon() const = 0;
  virtual const char* name() const = 0;
};

}  // namespace dnc
