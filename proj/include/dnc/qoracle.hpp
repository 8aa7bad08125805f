#pragma once

#include <functional>

#include "dnc/action_space.hpp"
#include "dnc/fourier.hpp"
#include "dnc/kernels.hpp"
#include "dnc/linalg.hpp"
#include "dnc/mlp.hpp"

namespace dnc {

// Black-box scorer of (state, discrete action) pairs. Implementations must be
// pure for fixed parameters and preserve batch order.
class QOracle {
 public:
  virtual ~QOracle() = default;
  virtual void evaluate(const Vec64& state, const std::vector<Vec64>& actions,
                        Vec64& q_out) const = 0;

  Vec64 evaluate(const Vec64& state, const std::vector<Vec64>& actions) const {
    Vec64 q;
    evaluate(state, actions, q);
    return q;
  }
  double evaluate_one(const Vec64& state, const Vec64& action) const;
};

// Wraps a plain function; used by tests and analysis oracles.
class FunctionQOracle : public QOracle {
 public:
  using Fn = std::function<double(const Vec64& state, const Vec64& action)>;
  explicit FunctionQOracle(Fn fn) : fn_(std::move(fn)) {}
  using QOracle::evaluate;
  void evaluate(const Vec64& state, const std::vector<Vec64>& actions,
                Vec64& q_out) const override;

 private:
  Fn fn_;
};

// The critic viewed as a Q-oracle. Input layout is [state features ;
// normalized action]; bind() hoists the state contribution so repeated
// batches for one state only pay for the action columns.
//
// bind() mutates the cache and is not thread-safe; evaluate() on a bound
// state is read-only and safe to call concurrently.
class CriticQOracle : public QOracle {
 public:
  CriticQOracle(const MlpParams& critic, FourierBasisConfig basis, ActionSpaceSpec spec);

  void bind(const Vec64& state, const Vec64& features);
  void bind(const Vec64& state);

  using QOracle::evaluate;
  void evaluate(const Vec64& state, const std::vector<Vec64>& actions,
                Vec64& q_out) const override;

  const ActionSpaceSpec& spec() const { return spec_; }

 private:
  const MlpParams* critic_;
  FourierBasisConfig basis_;
  ActionSpaceSpec spec_;
  Vec64 bound_state_;
  Vec64 bound_part_;
  bool bound_ = false;
};

}  // namespace dnc
