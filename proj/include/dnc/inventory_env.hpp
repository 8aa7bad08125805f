#pragma once

#include <cstddef>

#include "dnc/env.hpp"

namespace dnc {

// Joint replenishment of N items under Poisson demand. The agent picks
// order-up-to levels; orders arrive before demand within the step. Negative
// stock levels are backorders carried at penalty cost.
struct InventoryConfig {
  std::size_t n_items = 2;
  long s_max = 66;
  double holding_cost = 1.0;
  double backorder_cost = 19.0;
  double per_item_order_cost = 10.0;
  double common_order_cost = 75.0;
  Vec64 demand_rates;  // lambda per item
  double init_inventory = 25.0;
  std::size_t horizon = 100;
  // Stock levels are clipped into this range before featurization.
  double state_clip_low = -50.0;
  double state_clip_high = 66.0;

  void validate() const;
};

// First half of the items at rate 10, the rest at 20.
InventoryConfig default_inventory_config(std::size_t n_items);

StepResult inventory_step(const Vec64& levels, const Vec64& order_up_to,
                          const InventoryConfig& cfg, Rng& rng);

class InventoryEnv : public EnvContract {
 public:
  explicit InventoryEnv(InventoryConfig cfg);
  Vec64 reset(Rng& rng) const override;
  StepResult step(const Vec64& state, const Vec64& action, Rng& rng) const override;
  const ActionSpaceSpec& action_spec() const override { return spec_; }
  std::size_t state_dim() const override { return cfg_.n_items; }
  std::vector<std::pair<double, double>> state_bounds() const override;
  std::size_t horizon() const override { return cfg_.horizon; }
  const char* name() const override { return "inventory"; }
  const InventoryConfig& config() const { return cfg_; }

 private:
  InventoryConfig cfg_;
  ActionSpaceSpec spec_;
};

}  // namespace dnc
