#pragma once

#include <cmath>
#include <stdexcept>

namespace dnc {

struct HuberResult {
  double loss = 0.0;
  double dloss_dpred = 0.0;
};

// Quadratic within |pred - target| <= delta, linear outside.
inline HuberResult huber_loss_grad(double pred, double target, double delta = 1.0) {
  if (!(delta > 0.0)) throw std::invalid_argument("huber: delta must be > 0");
  const double e = pred - target;
  HuberResult r;
  if (std::abs(e) <= delta) {
    r.loss = 0.5 * e * e;
    r.dloss_dpred = e;
  } else {
    r.loss = delta * (std::abs(e) - 0.5 * delta);
    r.dloss_dpred = e > 0.0 ? delta : -delta;
  }
  return r;
}

}  // namespace dnc
