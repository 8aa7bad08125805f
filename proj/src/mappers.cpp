#include "dnc/mappers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dnc/kernels.hpp"

namespace dnc {

Vec64 minmax_map(const Vec64& a_hat, const ActionSpaceSpec& spec) {
  return discretize_base(a_hat, spec);
}

Vec64 knn_map(const Vec64& state, const Vec64& a_hat, const std::vector<Vec64>& enumerated,
              std::size_t k, const QOracle& oracle) {
  if (enumerated.empty()) throw std::invalid_argument("knn_map: empty action list");
  if (k == 0 || k > enumerated.size()) {
    throw std::invalid_argument("knn_map: k out of range");
  }

  Vec64 dist2;
  squared_distance_scan(enumerated, a_hat, dist2);

  std::vector<std::size_t> order(enumerated.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Enumeration is lexicographic, so index order realizes the lexicographic
  // tie-break.
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (dist2[a] != dist2[b]) return dist2[a] < dist2[b];
                      return a < b;
                    });

  std::vector<Vec64> nearest(k);
  for (std::size_t i = 0; i < k; ++i) nearest[i] = enumerated[order[i]];
  Vec64 q;
  oracle.evaluate(state, nearest, q);

  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (q[i] > q[best] ||
        (q[i] == q[best] && lex_less(nearest[i], nearest[best]))) {
      best = i;
    }
  }
  return nearest[best];
}

Vec64 brute_force_best(const Vec64& state, const std::vector<Vec64>& enumerated,
                       const QOracle& oracle) {
  if (enumerated.empty()) throw std::invalid_argument("brute_force_best: empty action list");
  Vec64 q;
  oracle.evaluate(state, enumerated, q);
  std::size_t best = 0;
  for (std::size_t i = 1; i < enumerated.size(); ++i) {
    if (q[i] > q[best] ||
        (q[i] == q[best] && lex_less(enumerated[i], enumerated[best]))) {
      best = i;
    }
  }
  return enumerated[best];
}

KnnMapper::KnnMapper(ActionSpaceSpec spec, std::size_t k, std::size_t limit)
    : spec_(std::move(spec)), k_(k) {
  enumerated_ = enumerate_action_space(spec_, limit);
  if (k_ == 0 || k_ > enumerated_.size()) {
    throw std::invalid_argument("KnnMapper: k out of range");
  }
}

Vec64 KnnMapper::map(const Vec64& state, const Vec64& a_hat, const QOracle& oracle,
                     Rng&) const {
  return knn_map(state, scale_to_range(a_hat, spec_), enumerated_, k_, oracle);
}

}  // namespace dnc
