#include "dnc/inventory_env.hpp"

#include <cmath>
#include <stdexcept>

namespace dnc {

void InventoryConfig::validate() const {
  if (n_items < 1) throw std::invalid_argument("inventory: need at least one item");
  if (s_max < 0) throw std::invalid_argument("inventory: s_max must be >= 0");
  if (demand_rates.size() != n_items) {
    throw std::invalid_argument("inventory: demand_rates size mismatch");
  }
  for (double l : demand_rates) {
    if (l < 0.0) throw std::invalid_argument("inventory: negative demand rate");
  }
  if (!(state_clip_low < state_clip_high)) {
    throw std::invalid_argument("inventory: bad state clip range");
  }
}

InventoryConfig default_inventory_config(std::size_t n_items) {
  InventoryConfig cfg;
  cfg.n_items = n_items;
  cfg.demand_rates.resize(n_items);
  const std::size_t half = (n_items + 1) / 2;
  for (std::size_t i = 0; i < n_items; ++i) {
    cfg.demand_rates[i] = i < half ? 10.0 : 20.0;
  }
  cfg.validate();
  return cfg;
}

StepResult inventory_step(const Vec64& levels, const Vec64& order_up_to,
                          const InventoryConfig& cfg, Rng& rng) {
  if (levels.size() != cfg.n_items || order_up_to.size() != cfg.n_items) {
    throw std::invalid_argument("inventory_step: dimension mismatch");
  }
  StepResult r;
  r.next_state.resize(cfg.n_items);
  double cost = 0.0;
  bool any_order = false;
  for (std::size_t i = 0; i < cfg.n_items; ++i) {
    const double s = order_up_to[i];
    if (s < 0.0 || s > static_cast<double>(cfg.s_max) || s != std::floor(s)) {
      throw std::invalid_argument("inventory_step: order-up-to level off the grid");
    }
    const double q = s > levels[i] ? s - levels[i] : 0.0;
    const double arrived = levels[i] + q;
    const double demand = static_cast<double>(rng.poisson(cfg.demand_rates[i]));
    const double next = arrived - demand;
    r.next_state[i] = next;
    if (next > 0.0) {
      cost += cfg.holding_cost * next;
    } else {
      cost += cfg.backorder_cost * (-next);
    }
    if (q > 0.0) {
      cost += cfg.per_item_order_cost;
      any_order = true;
    }
  }
  if (any_order) cost += cfg.common_order_cost;
  r.reward = -cost;
  r.done = false;  // horizon enforced by the loop
  return r;
}

InventoryEnv::InventoryEnv(InventoryConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  spec_ = ActionSpaceSpec::uniform(cfg_.n_items, 0.0, static_cast<double>(cfg_.s_max), 1.0);
}

Vec64 InventoryEnv::reset(Rng&) const {
  return Vec64(cfg_.n_items, cfg_.init_inventory);
}

StepResult InventoryEnv::step(const Vec64& state, const Vec64& action, Rng& rng) const {
  return inventory_step(state, action, cfg_, rng);
}

std::vector<std::pair<double, double>> InventoryEnv::state_bounds() const {
  return std::vector<std::pair<double, double>>(
      cfg_.n_items, {cfg_.state_clip_low, cfg_.state_clip_high});
}

}  // namespace dnc
