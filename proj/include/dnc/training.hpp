#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dnc/env.hpp"
#include "dnc/fourier.hpp"
#include "dnc/mappers.hpp"
#include "dnc/mlp.hpp"
#include "dnc/policy.hpp"

namespace dnc {

struct TrainConfig {
  double gamma = 0.99;
  double alpha_cr = 1e-2;
  double alpha_ac = 1e-3;  // must not exceed alpha_cr
  SigmaMode sigma_mode = SigmaMode::Constant;
  double sigma_value = 0.5;
  std::size_t n_episodes = 1000;
  std::size_t eval_every = 0;  // 0 disables periodic evaluation
  std::size_t eval_episodes = 5;
  std::size_t actor_nodes = 0;  // two hidden layers of this width; 0 = shallow
  std::size_t critic_nodes = 32;
  std::size_t fourier_order = 3;
  bool fourier_coupled = false;
  double huber_delta = 1.0;
  std::size_t enumeration_limit = 100000;  // vac only

  void validate() const;
};

struct EvalPoint {
  std::size_t episode = 0;
  double mean_return = 0.0;
};

struct TrainResult {
  std::vector<double> episode_returns;
  std::vector<EvalPoint> eval_points;
  MlpParams actor;
  MlpParams critic;
  GaussianHead head;
  FourierBasisConfig basis;
  std::size_t total_env_steps = 0;
  double wall_seconds = 0.0;
};

// Step record handed to the optional hook right after the two updates; a_hat
// is the continuous action the actor update consumed, a_star the discrete
// action the critic update (and the environment) consumed.
struct StepAudit {
  const Vec64& state;
  const Vec64& a_hat;
  const Vec64& a_star;
  const Vec64& next_state;
  double reward;
  bool done;
  std::size_t episode;
};

struct TrainHooks {
  std::function<void(const StepAudit&)> on_step;
};

double td_error(double r, double gamma, double q_next, double q_curr, bool done);

// Q_w(s, a) through the plain concatenated forward pass.
double critic_q(const MlpParams& critic, const Vec64& state_feats, const Vec64& action,
                const ActionSpaceSpec& spec);

// One semi-gradient SGD step on Huber(Q_w(s,a), q_curr + delta); the
// bootstrap target is constant.
void critic_update(MlpParams& critic, const Vec64& state_feats, const Vec64& action,
                   const ActionSpaceSpec& spec, double delta, double alpha_cr,
                   double huber_delta = 1.0);

// Ascent step on delta * log pi(a_hat | s) through the Gaussian head.
void actor_update(MlpParams& actor, const GaussianHead& head, const Vec64& state_feats,
                  const Vec64& a_hat, double delta, double alpha_ac);

Vec64 clamp_state(const Vec64& state, const std::vector<std::pair<double, double>>& bounds);

FourierBasisConfig basis_for_env(const EnvContract& env, const TrainConfig& cfg);

// Online actor-critic with a pluggable continuous-to-discrete mapper.
TrainResult train_run(const EnvContract& env, const Mapper& mapper, const TrainConfig& cfg,
                      std::uint64_t seed, const TrainHooks& hooks = {});

// Mean undiscounted return of the greedy policy (a_hat = mu, no exploration
// noise). Parameters are untouched.
double eval_policy(const EnvContract& env, const MlpParams& actor, const GaussianHead& head,
                   const FourierBasisConfig& basis, const Mapper& mapper,
                   const MlpParams& critic, std::size_t n_episodes, Rng rng);

// Vanilla actor-critic over the enumerated action space with a categorical
// (softmax) policy. Throws CardinalityExceeded when the space cannot be
// enumerated within cfg.enumeration_limit.
TrainResult vac_train_run(const EnvContract& env, const TrainConfig& cfg,
                          std::uint64_t seed, const TrainHooks& hooks = {});

}  // namespace dnc
