#include "dnc/recommender_env.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {

void CatalogEnvConfig::validate() const {
  if (catalog.features.rows == 0 || catalog.features.cols == 0) {
    throw std::invalid_argument("recommender: empty catalog");
  }
  if (catalog.item_rewards.size() != catalog.features.rows) {
    throw std::invalid_argument("recommender: rewards/features size mismatch");
  }
  if (n_recommend < 1) throw std::invalid_argument("recommender: n_recommend must be >= 1");
  if (end_prob_pick < 0.0 || end_prob_pick > 1.0 || end_prob_other < 0.0 ||
      end_prob_other > 1.0) {
    throw std::invalid_argument("recommender: episode-end probabilities outside [0,1]");
  }
}

std::size_t project_to_catalog(const Vec64& block, const Mat64& catalog) {
  if (catalog.rows == 0) throw std::invalid_argument("project_to_catalog: empty catalog");
  if (block.size() != catalog.cols) {
    throw std::invalid_argument("project_to_catalog: block size mismatch");
  }
  std::size_t best = 0;
  double best_d = 0.0;
  for (std::size_t i = 0; i < catalog.rows; ++i) {
    const double* row = catalog.row(i);
    double d = 0.0;
    for (std::size_t f = 0; f < catalog.cols; ++f) {
      const double diff = block[f] - row[f];
      d += diff * diff;
    }
    if (i == 0 || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

RecommenderEnv::RecommenderEnv(CatalogEnvConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const std::size_t n_features = cfg_.catalog.features.cols;
  spec_ = ActionSpaceSpec::uniform(cfg_.n_recommend * n_features, 0.0, 1.0, 0.01);
  for (std::size_t i = 0; i < cfg_.catalog.features.rows; ++i) {
    const double* row = cfg_.catalog.features.row(i);
    std::vector<double> key(row, row + n_features);
    if (!row_index_.emplace(std::move(key), i).second) {
      throw std::invalid_argument("recommender: duplicate catalog row");
    }
  }
}

std::size_t RecommenderEnv::item_index(const Vec64& state) const {
  const auto it = row_index_.find(state);
  if (it == row_index_.end()) {
    throw std::invalid_argument("recommender: state is not a catalog row");
  }
  return it->second;
}

Vec64 RecommenderEnv::item_row(std::size_t idx) const {
  const double* row = cfg_.catalog.features.row(idx);
  return Vec64(row, row + cfg_.catalog.features.cols);
}

Vec64 RecommenderEnv::reset(Rng& rng) const {
  return item_row(rng.uniform_index(cfg_.catalog.features.rows));
}

StepResult RecommenderEnv::step(const Vec64& state, const Vec64& action, Rng& rng) const {
  const std::size_t n_features = cfg_.catalog.features.cols;
  if (action.size() != cfg_.n_recommend * n_features) {
    throw std::invalid_argument("recommender: action length != n_recommend * features");
  }
  const std::size_t last = item_index(state);
  const Vec64 last_row = item_row(last);

  // Project every recommended block to a real item, then offer the one most
  // similar to the last pick.
  std::size_t offered = 0;
  double offered_sim = 0.0;
  Vec64 block(n_features);
  for (std::size_t b = 0; b < cfg_.n_recommend; ++b) {
    block.assign(action.begin() + static_cast<long>(b * n_features),
                 action.begin() + static_cast<long>((b + 1) * n_features));
    const std::size_t item = project_to_catalog(block, cfg_.catalog.features);
    const double sim = cosine_similarity(last_row, item_row(item));
    if (b == 0 || sim > offered_sim || (sim == offered_sim && item < offered)) {
      offered = item;
      offered_sim = sim;
    }
  }

  const double accept_p = 1.0 / (1.0 + std::exp(-cfg_.sigmoid_scale * offered_sim));
  StepResult r;
  if (rng.uniform01() < accept_p) {
    r.reward = cfg_.catalog.item_rewards[offered];
    r.next_state = item_row(offered);
    r.done = rng.uniform01() < cfg_.end_prob_pick;
  } else {
    r.reward = 0.0;
    r.next_state = item_row(rng.uniform_index(cfg_.catalog.features.rows));
    r.done = rng.uniform01() < cfg_.end_prob_other;
  }
  return r;
}

std::vector<std::pair<double, double>> RecommenderEnv::state_bounds() const {
  return std::vector<std::pair<double, double>>(state_dim(), {0.0, 1.0});
}

}  // namespace dnc
