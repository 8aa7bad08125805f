#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "dnc/action_space.hpp"
#include "dnc/qoracle.hpp"
#include "dnc/rng.hpp"
#include "dnc/sa_search.hpp"

namespace dnc {

// Maps the actor's continuous output to a feasible discrete action.
class Mapper {
 public:
  virtual ~Mapper() = default;
  virtual Vec64 map(const Vec64& state, const Vec64& a_hat, const QOracle& oracle,
                    Rng& rng) const = 0;
  virtual const char* name() const = 0;
};

// Clip, normalize, scale, round; no search.
Vec64 minmax_map(const Vec64& a_hat, const ActionSpaceSpec& spec);

class MinMaxMapper : public Mapper {
 public:
  explicit MinMaxMapper(ActionSpaceSpec spec) : spec_(std::move(spec)) {}
  Vec64 map(const Vec64&, const Vec64& a_hat, const QOracle&, Rng&) const override {
    return minmax_map(a_hat, spec_);
  }
  const char* name() const override { return "minmax"; }

 private:
  ActionSpaceSpec spec_;
};

class DncMapper : public Mapper {
 public:
  DncMapper(ActionSpaceSpec spec, PerturbationParams pparams, SaParams sparams)
      : spec_(std::move(spec)), pparams_(pparams), sparams_(sparams) {}
  Vec64 map(const Vec64& state, const Vec64& a_hat, const QOracle& oracle,
            Rng& rng) const override {
    return sa_search(state, a_hat, oracle, spec_, pparams_, sparams_, rng);
  }
  const char* name() const override { return "dnc"; }

 private:
  ActionSpaceSpec spec_;
  PerturbationParams pparams_;
  SaParams sparams_;
};

// Exact k-nearest-neighbor selection: the k grid actions closest to a_hat
// (given in action coordinates), then the one with the highest Q-value.
// Distance ties break by lexicographic action order, Q ties likewise.
Vec64 knn_map(const Vec64& state, const Vec64& a_hat, const std::vector<Vec64>& enumerated,
              std::size_t k, const QOracle& oracle);

// Argmax of the oracle over the whole enumerated space, lexicographic
// tie-break. Test oracle for knn_map and the annealing search.
Vec64 brute_force_best(const Vec64& state, const std::vector<Vec64>& enumerated,
                       const QOracle& oracle);

class KnnMapper : public Mapper {
 public:
  // Enumerates the space up front; throws CardinalityExceeded past `limit`.
  KnnMapper(ActionSpaceSpec spec, std::size_t k, std::size_t limit);
  Vec64 map(const Vec64& state, const Vec64& a_hat, const QOracle& oracle,
            Rng&) const override;
  const char* name() const override { return "knn"; }
  const std::vector<Vec64>& enumerated() const { return enumerated_; }

 private:
  ActionSpaceSpec spec_;
  std::size_t k_;
  std::vector<Vec64> enumerated_;
};

}  // namespace dnc
