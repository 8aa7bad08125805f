#pragma once

#include <cstddef>
#include <map>

#include "dnc/catalog.hpp"
#include "dnc/env.hpp"

namespace dnc {

// Recommender over an item catalog. The state is the feature row of the last
// item the customer picked; the action concatenates n_recommend candidate
// feature blocks, each projected onto the nearest real catalog row.
struct CatalogEnvConfig {
  Catalog catalog;
  std::size_t n_recommend = 1;
  double end_prob_pick = 0.1;
  double end_prob_other = 0.2;
  double sigmoid_scale = 5.0;

  void validate() const;
};

// Index of the catalog row nearest to the block (Euclidean); ties go to the
// lowest index.
std::size_t project_to_catalog(const Vec64& block, const Mat64& catalog);

class RecommenderEnv : public EnvContract {
 public:
  explicit RecommenderEnv(CatalogEnvConfig cfg);
  Vec64 reset(Rng& rng) const override;
  StepResult step(const Vec64& state, const Vec64& action, Rng& rng) const override;
  const ActionSpaceSpec& action_spec() const override { return spec_; }
  std::size_t state_dim() const override { return cfg_.catalog.features.cols; }
  std::vector<std::pair<double, double>> state_bounds() const override;
  std::size_t horizon() const override { return 200; }
  const char* name() const override { return "recommender"; }
  const CatalogEnvConfig& config() const { return cfg_; }

 private:
  std::size_t item_index(const Vec64& state) const;
  Vec64 item_row(std::size_t idx) const;

  CatalogEnvConfig cfg_;
  ActionSpaceSpec spec_;
  std::map<std::vector<double>, std::size_t> row_index_;
};

}  // namespace dnc
