#include "dnc/training.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "dnc/losses.hpp"
#include "dnc/qoracle.hpp"

namespace dnc {
namespace {

// Sub-stream tags for the per-seed master Rng.
enum Stream : std::uint64_t {
  kInitStream = 1,
  kEnvStream = 2,
  kPolicyStream = 3,
  kSearchStream = 4,
  kEvalStreamBase = 1u << 20,
};

Vec64 concat_input(const Vec64& feats, const Vec64& action, const ActionSpaceSpec& spec) {
  Vec64 x;
  x.reserve(feats.size() + action.size());
  x.insert(x.end(), feats.begin(), feats.end());
  for (std::size_t n = 0; n < action.size(); ++n) {
    x.push_back((action[n] - spec.a_min[n]) / (spec.a_max[n] - spec.a_min[n]));
  }
  return x;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

void TrainConfig::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("train: gamma outside [0,1)");
  if (!(alpha_cr > 0.0) || !(alpha_ac > 0.0)) {
    throw std::invalid_argument("train: learning rates must be > 0");
  }
  if (alpha_ac > alpha_cr) {
    throw std::invalid_argument("train: alpha_ac must not exceed alpha_cr");
  }
  if (sigma_mode == SigmaMode::Constant && !(sigma_value > 0.0)) {
    throw std::invalid_argument("train: constant sigma must be > 0");
  }
  if (n_episodes < 1) throw std::invalid_argument("train: n_episodes must be >= 1");
  if (eval_every > 0 && eval_episodes < 1) {
    throw std::invalid_argument("train: eval_episodes must be >= 1");
  }
}

double td_error(double r, double gamma, double q_next, double q_curr, bool done) {
  return r + (done ? 0.0 : gamma * q_next) - q_curr;
}

double critic_q(const MlpParams& critic, const Vec64& state_feats, const Vec64& action,
                const ActionSpaceSpec& spec) {
  return mlp_forward(critic, concat_input(state_feats, action, spec))[0];
}

void critic_update(MlpParams& critic, const Vec64& state_feats, const Vec64& action,
                   const ActionSpaceSpec& spec, double delta, double alpha_cr,
                   double huber_delta) {
  require_finite(delta, "critic_update: td error");
  MlpCache cache;
  const Vec64 x = concat_input(state_feats, action, spec);
  const double pred = mlp_forward(critic, x, &cache)[0];
  const double target = pred + delta;
  const HuberResult h = huber_loss_grad(pred, target, huber_delta);
  const MlpGrad g = mlp_grad(critic, cache, {h.dloss_dpred});
  sgd_step(critic, g, alpha_cr);
}

void actor_update(MlpParams& actor, const GaussianHead& head, const Vec64& state_feats,
                  const Vec64& a_hat, double delta, double alpha_ac) {
  require_finite(delta, "actor_update: td error");
  MlpCache cache;
  const Vec64 raw = mlp_forward(actor, state_feats, &cache);
  const GaussianPolicyParams params = head.forward(raw);
  GaussianLogProb glp = gaussian_log_prob_grad(params, a_hat);
  // Ascent on delta * logp == descent on -delta * logp.
  for (double& v : glp.dlogp_dmu) v *= -delta;
  for (double& v : glp.dlogp_dsigma) v *= -delta;
  const Vec64 upstream = head.backward(raw, params, glp.dlogp_dmu, glp.dlogp_dsigma);
  const MlpGrad g = mlp_grad(actor, cache, upstream);
  sgd_step(actor, g, alpha_ac);
}

Vec64 clamp_state(const Vec64& state, const std::vector<std::pair<double, double>>& bounds) {
  Vec64 out(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    double x = state[i];
    if (x < bounds[i].first) x = bounds[i].first;
    if (x > bounds[i].second) x = bounds[i].second;
    out[i] = x;
  }
  return out;
}

FourierBasisConfig basis_for_env(const EnvContract& env, const TrainConfig& cfg) {
  FourierBasisConfig basis;
  basis.order = cfg.fourier_order;
  basis.coupled = cfg.fourier_coupled;
  basis.input_dim = env.state_dim();
  basis.input_bounds = env.state_bounds();
  basis.validate();
  return basis;
}

TrainResult train_run(const EnvContract& env, const Mapper& mapper, const TrainConfig& cfg,
                      std::uint64_t seed, const TrainHooks& hooks) {
  cfg.validate();
  const double t_start = now_seconds();

  const ActionSpaceSpec& spec = env.action_spec();
  const auto bounds = env.state_bounds();
  const FourierBasisConfig basis = basis_for_env(env, cfg);
  const std::size_t n_feats = fourier_feature_count(basis);

  GaussianHead head{spec.n_dims, cfg.sigma_mode, cfg.sigma_value};

  const Rng master(seed);
  Rng rng_init = master.fork(kInitStream);
  Rng rng_env = master.fork(kEnvStream);
  Rng rng_policy = master.fork(kPolicyStream);
  Rng rng_search = master.fork(kSearchStream);

  TrainResult res;
  res.basis = basis;
  res.head = head;
  res.actor = make_mlp(layer_sizes_from_nodes(n_feats, cfg.actor_nodes, head.raw_dim()),
                       OutputActivation::Identity, rng_init);
  res.critic = make_mlp(layer_sizes_from_nodes(n_feats + spec.n_dims, cfg.critic_nodes, 1),
                        OutputActivation::Identity, rng_init);

  CriticQOracle oracle(res.critic, basis, spec);

  for (std::size_t ep = 1; ep <= cfg.n_episodes; ++ep) {
    Vec64 s = env.reset(rng_env);
    Vec64 feats = fourier_features(clamp_state(s, bounds), basis);
    double ep_return = 0.0;

    for (std::size_t t = 0; t < env.horizon(); ++t) {
      const Vec64 raw = mlp_forward(res.actor, feats);
      const GaussianPolicyParams pol = head.forward(raw);
      const Vec64 a_hat = gaussian_sample(pol, rng_policy);
      oracle.bind(s, feats);
      const Vec64 a_star = mapper.map(s, a_hat, oracle, rng_search);

      const StepResult sr = env.step(s, a_star, rng_env);
      ep_return += sr.reward;
      ++res.total_env_steps;
      const bool done = sr.done || (t + 1 == env.horizon());
      const Vec64 feats_next = fourier_features(clamp_state(sr.next_state, bounds), basis);

      const double q_curr = critic_q(res.critic, feats, a_star, spec);
      double q_next = 0.0;
      if (!done) {
        const Vec64 raw_next = mlp_forward(res.actor, feats_next);
        const Vec64 a_hat_next = gaussian_sample(head.forward(raw_next), rng_policy);
        oracle.bind(sr.next_state, feats_next);
        const Vec64 a_star_next = mapper.map(sr.next_state, a_hat_next, oracle, rng_search);
        q_next = critic_q(res.critic, feats_next, a_star_next, spec);
      }
      const double delta = td_error(sr.reward, cfg.gamma, q_next, q_curr, done);

      critic_update(res.critic, feats, a_star, spec, delta, cfg.alpha_cr, cfg.huber_delta);
      actor_update(res.actor, head, feats, a_hat, delta, cfg.alpha_ac);

      if (hooks.on_step) {
        hooks.on_step(StepAudit{s, a_hat, a_star, sr.next_state, sr.reward, done, ep});
      }
      if (done) break;
      s = sr.next_state;
      feats = feats_next;
    }
    res.episode_returns.push_back(ep_return);

    if (cfg.eval_every > 0 && ep % cfg.eval_every == 0) {
      const double mean_ret =
          eval_policy(env, res.actor, head, basis, mapper, res.critic, cfg.eval_episodes,
                      master.fork(kEvalStreamBase + ep));
      res.eval_points.push_back({ep, mean_ret});
    }
  }
  res.wall_seconds = now_seconds() - t_start;
  return res;
}

double eval_policy(const EnvContract& env, const MlpParams& actor, const GaussianHead& head,
                   const FourierBasisConfig& basis, const Mapper& mapper,
                   const MlpParams& critic, std::size_t n_episodes, Rng rng) {
  const ActionSpaceSpec& spec = env.action_spec();
  const auto bounds = env.state_bounds();
  CriticQOracle oracle(critic, basis, spec);
  Rng rng_env = rng.fork(kEnvStream);
  Rng rng_search = rng.fork(kSearchStream);

  double total = 0.0;
  for (std::size_t ep = 0; ep < n_episodes; ++ep) {
    Vec64 s = env.reset(rng_env);
    for (std::size_t t = 0; t < env.horizon(); ++t) {
      const Vec64 feats = fourier_features(clamp_state(s, bounds), basis);
      const Vec64 raw = mlp_forward(actor, feats);
      const Vec64 a_hat = head.forward(raw).mu;  // greedy mean action
      oracle.bind(s, feats);
      const Vec64 a_star = mapper.map(s, a_hat, oracle, rng_search);
      const StepResult sr = env.step(s, a_star, rng_env);
      total += sr.reward;
      if (sr.done) break;
      s = sr.next_state;
    }
  }
  return total / static_cast<double>(n_episodes);
}

TrainResult vac_train_run(const EnvContract& env, const TrainConfig& cfg,
                          std::uint64_t seed, const TrainHooks& hooks) {
  cfg.validate();
  const double t_start = now_seconds();

  const ActionSpaceSpec& spec = env.action_spec();
  const auto bounds = env.state_bounds();
  const FourierBasisConfig basis = basis_for_env(env, cfg);
  const std::size_t n_feats = fourier_feature_count(basis);

  const std::vector<Vec64> actions = enumerate_action_space(spec, cfg.enumeration_limit);

  const Rng master(seed);
  Rng rng_init = master.fork(kInitStream);
  Rng rng_env = master.fork(kEnvStream);
  Rng rng_policy = master.fork(kPolicyStream);

  TrainResult res;
  res.basis = basis;
  res.head = GaussianHead{spec.n_dims, SigmaMode::Constant, 1.0};
  res.actor = make_mlp(layer_sizes_from_nodes(n_feats, cfg.actor_nodes, actions.size()),
                       OutputActivation::Identity, rng_init);
  res.critic = make_mlp(layer_sizes_from_nodes(n_feats + spec.n_dims, cfg.critic_nodes, 1),
                        OutputActivation::Identity, rng_init);

  auto greedy_eval = [&](Rng rng_eval) {
    Rng rng_env_eval = rng_eval.fork(kEnvStream);
    double total = 0.0;
    for (std::size_t ep = 0; ep < cfg.eval_episodes; ++ep) {
      Vec64 s = env.reset(rng_env_eval);
      for (std::size_t t = 0; t < env.horizon(); ++t) {
        const Vec64 feats = fourier_features(clamp_state(s, bounds), basis);
        const Vec64 probs = softmax(mlp_forward(res.actor, feats));
        const Vec64& a = actions[argmax_index(probs)];
        const StepResult sr = env.step(s, a, rng_env_eval);
        total += sr.reward;
        if (sr.done) break;
        s = sr.next_state;
      }
    }
    return total / static_cast<double>(cfg.eval_episodes);
  };

  for (std::size_t ep = 1; ep <= cfg.n_episodes; ++ep) {
    Vec64 s = env.reset(rng_env);
    Vec64 feats = fourier_features(clamp_state(s, bounds), basis);
    double ep_return = 0.0;

    for (std::size_t t = 0; t < env.horizon(); ++t) {
      MlpCache cache;
      const Vec64 logits = mlp_forward(res.actor, feats, &cache);
      const Vec64 probs = softmax(logits);
      const std::size_t idx = sample_categorical(probs, rng_policy);
      const Vec64& a = actions[idx];

      const StepResult sr = env.step(s, a, rng_env);
      ep_return += sr.reward;
      ++res.total_env_steps;
      const bool done = sr.done || (t + 1 == env.horizon());
      const Vec64 feats_next = fourier_features(clamp_state(sr.next_state, bounds), basis);

      const double q_curr = critic_q(res.critic, feats, a, spec);
      double q_next = 0.0;
      std::size_t idx_next = 0;
      if (!done) {
        const Vec64 probs_next = softmax(mlp_forward(res.actor, feats_next));
        idx_next = sample_categorical(probs_next, rng_policy);
        q_next = critic_q(res.critic, feats_next, actions[idx_next], spec);
      }
      const double delta = td_error(sr.reward, cfg.gamma, q_next, q_curr, done);

      critic_update(res.critic, feats, a, spec, delta, cfg.alpha_cr, cfg.huber_delta);
      // d log softmax(logits)[idx] = onehot(idx) - probs; descend on -delta * logp.
      Vec64 upstream(probs.size());
      for (std::size_t i = 0; i < probs.size(); ++i) {
        upstream[i] = -delta * ((i == idx ? 1.0 : 0.0) - probs[i]);
      }
      const MlpGrad g = mlp_grad(res.actor, cache, upstream);
      sgd_step(res.actor, g, cfg.alpha_ac);

      if (hooks.on_step) {
        hooks.on_step(StepAudit{s, a, a, sr.next_state, sr.reward, done, ep});
      }
      if (done) break;
      s = sr.next_state;
      feats = feats_next;
    }
    res.episode_returns.push_back(ep_return);

    if (cfg.eval_every > 0 && ep % cfg.eval_every == 0) {
      res.eval_points.push_back({ep, greedy_eval(master.fork(kEvalStreamBase + ep))});
    }
  }
  res.wall_seconds = now_seconds() - t_start;
  return res;
}

}  // namespace dnc
