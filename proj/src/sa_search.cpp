#include "dnc/sa_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dnc {

void SaParams::validate() const {
  if (!(k_init_fraction > 0.0 && k_init_fraction <= 1.0)) {
    throw std::invalid_argument("sa: k_init_fraction must be in (0,1]");
  }
  if (!(beta_init > 0.0)) throw std::invalid_argument("sa: beta_init must be > 0");
  if (!(cooling_fraction > 0.0 && cooling_fraction <= 1.0)) {
    throw std::invalid_argument("sa: cooling_fraction must be in (0,1]");
  }
  if (max_iters < 1) throw std::invalid_argument("sa: max_iters must be >= 1");
}

namespace {

struct Scored {
  Vec64 action;
  double q;
};

// Memory of evaluated actions, unique, insertion-ordered.
class Memory {
 public:
  void insert(const Vec64& action, double q) {
    for (const Scored& s : items_) {
      if (s.action == action) return;
    }
    items_.push_back({action, q});
  }
  const Scored& pick(Rng& rng) const { return items_[rng.uniform_index(items_.size())]; }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<Scored> items_;
};

}  // namespace

Vec64 sa_search(const Vec64& state, const Vec64& a_hat, const QOracle& oracle,
                const ActionSpaceSpec& spec, const PerturbationParams& pparams,
                const SaParams& sparams, Rng& rng) {
  sparams.validate();
  pparams.validate(spec);

  Vec64 base = discretize_base(a_hat, spec);
  Vec64 best = base;
  bool have_best_q = false;
  double best_q = 0.0;

  // k counts neighbors to keep; it cools linearly from its initial value and
  // the loop ends when it reaches zero. ceil(k) is used when selecting.
  double k = -1.0;
  double c_k = 0.0;
  double beta = sparams.beta_init;
  const double c_beta = sparams.cooling_fraction * sparams.beta_init;

  Memory memory;
  Vec64 q_values;
  std::vector<std::size_t> order;

  for (std::size_t iter = 0; iter < sparams.max_iters; ++iter) {
    const Neighborhood nbh = generate_neighbors(base, spec, pparams);
    oracle.evaluate(state, nbh.candidates, q_values);
    const double base_q = q_values[0];
    if (!have_best_q) {
      best_q = base_q;
      have_best_q = true;
    }

    if (k < 0.0) {
      k = sparams.k_init_fraction * static_cast<double>(nbh.candidates.size());
      c_k = sparams.cooling_fraction * k;
    }

    // k-best proper neighbors, ordered by Q descending, lexicographic
    // tie-break. The base is scored (index 0) but kept out of K': if the
    // base were eligible as k_1 at a local optimum, the Metropolis test
    // would self-accept with probability exp(0) = 1 forever and the
    // random-restart branch could never fire.
    if (nbh.candidates.size() < 2) break;
    order.resize(nbh.candidates.size() - 1);
    std::iota(order.begin(), order.end(), std::size_t{1});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (q_values[a] != q_values[b]) return q_values[a] > q_values[b];
      return lex_less(nbh.candidates[a], nbh.candidates[b]);
    });
    std::size_t keep = static_cast<std::size_t>(
        std::ceil(std::min(k, static_cast<double>(order.size()))));
    if (keep < 1) keep = 1;

    for (std::size_t r = 0; r < keep; ++r) {
      memory.insert(nbh.candidates[order[r]], q_values[order[r]]);
    }

    const std::size_t top = order[0];
    const double top_q = q_values[top];
    if (top_q > base_q) {
      base = nbh.candidates[top];
      if (top_q > best_q) {
        best = base;
        best_q = top_q;
      }
    } else {
      double accept_p = 0.0;
      if (beta > 0.0) {
        const double e = std::exp(-(base_q - top_q) / beta);
        accept_p = sparams.acceptance_form == AcceptanceForm::Metropolis ? e : 1.0 - e;
      }
      if (rng.uniform01() < accept_p) {
        base = nbh.candidates[top];
        beta -= c_beta;
      } else {
        base = memory.pick(rng).action;
      }
    }

    k = std::max(0.0, k - c_k);
    if (k <= 0.0) break;
  }
  return best;
}

}  // namespace dnc
