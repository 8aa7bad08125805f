#include "dnc/qoracle.hpp"

#include <stdexcept>

namespace dnc {

double QOracle::evaluate_one(const Vec64& state, const Vec64& action) const {
  Vec64 q;
  evaluate(state, {action}, q);
  return q[0];
}

void FunctionQOracle::evaluate(const Vec64& state, const std::vector<Vec64>& actions,
                               Vec64& q_out) const {
  q_out.resize(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) q_out[i] = fn_(state, actions[i]);
}

CriticQOracle::CriticQOracle(const MlpParams& critic, FourierBasisConfig basis,
                             ActionSpaceSpec spec)
    : critic_(&critic), basis_(std::move(basis)), spec_(std::move(spec)) {
  const std::size_t expect = fourier_feature_count(basis_) + spec_.n_dims;
  if (critic.input_dim() != expect) {
    throw std::invalid_argument("CriticQOracle: critic input dim mismatch");
  }
}

void CriticQOracle::bind(const Vec64& state, const Vec64& features) {
  bound_state_ = state;
  bound_part_ = critic_state_part(*critic_, features);
  bound_ = true;
}

void CriticQOracle::bind(const Vec64& state) {
  bind(state, fourier_features(state, basis_));
}

void CriticQOracle::evaluate(const Vec64& state, const std::vector<Vec64>& actions,
                             Vec64& q_out) const {
  if (bound_ && state == bound_state_) {
    critic_batch_eval(*critic_, bound_part_, spec_, actions, q_out);
    return;
  }
  // Unbound path: compute the state part locally so evaluate stays const and
  // safe for concurrent readers.
  const Vec64 part = critic_state_part(*critic_, fourier_features(state, basis_));
  critic_batch_eval(*critic_, part, spec_, actions, q_out);
}

}  // namespace dnc
