#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dnc/catalog.hpp"
#include "dnc/kernels.hpp"
#include "dnc/qoracle.hpp"

using namespace dnc;

namespace {

struct ThreadGuard {
  explicit ThreadGuard(int n) { parallel::set_thread_count(n); }
  ~ThreadGuard() { parallel::set_thread_count(1); }
};

FourierBasisConfig basis(std::size_t dim) {
  FourierBasisConfig cfg;
  cfg.order = 3;
  cfg.coupled = false;
  cfg.input_dim = dim;
  cfg.input_bounds.assign(dim, {0.0, 1.0});
  return cfg;
}

}  // namespace

TEST_CASE("critic batch eval: omp matches the serial reference bit for bit") {
  ThreadGuard guard(4);
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n_dims = 1 + rng.uniform_index(12);
    const std::size_t n_feats = 1 + rng.uniform_index(40);
    const std::size_t nodes = trial % 3 == 0 ? 0 : 8 * (1 + rng.uniform_index(6));
    const ActionSpaceSpec spec = ActionSpaceSpec::uniform(n_dims, 0.0, 10.0, 1.0);
    MlpParams critic = make_mlp(layer_sizes_from_nodes(n_feats + n_dims, nodes, 1),
                                OutputActivation::Identity, rng);
    Vec64 feats(n_feats);
    for (double& x : feats) x = rng.uniform(-1.0, 1.0);
    const Vec64 part = critic_state_part(critic, feats);

    std::vector<Vec64> actions(300, Vec64(n_dims));
    for (Vec64& a : actions) {
      for (double& x : a) x = static_cast<double>(rng.uniform_index(11));
    }
    Vec64 q_serial, q_omp;
    critic_batch_eval_serial(critic, part, spec, actions, q_serial);
    critic_batch_eval_omp(critic, part, spec, actions, q_omp);
    CHECK(q_serial == q_omp);
  }
}

TEST_CASE("critic batch eval: split-input path agrees with the plain forward pass") {
  Rng rng(103);
  const std::size_t n_dims = 4;
  const std::size_t n_feats = 13;
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(n_dims, 0.0, 66.0, 1.0);
  MlpParams critic = make_mlp({n_feats + n_dims, 32, 32, 1}, OutputActivation::Identity, rng);
  Vec64 feats(n_feats);
  for (double& x : feats) x = rng.uniform(-1.0, 1.0);
  const Vec64 part = critic_state_part(critic, feats);

  for (int trial = 0; trial < 50; ++trial) {
    Vec64 a(n_dims);
    for (double& x : a) x = static_cast<double>(rng.uniform_index(67));
    Vec64 q;
    critic_batch_eval_serial(critic, part, spec, {a}, q);

    Vec64 input = feats;
    for (std::size_t n = 0; n < n_dims; ++n) {
      input.push_back((a[n] - spec.a_min[n]) / (spec.a_max[n] - spec.a_min[n]));
    }
    const double direct = mlp_forward(critic, input)[0];
    CHECK(q[0] == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("distance scan: omp matches serial bit for bit") {
  ThreadGuard guard(4);
  Rng rng(107);
  std::vector<Vec64> points(1000, Vec64(7));
  for (Vec64& p : points) {
    for (double& x : p) x = rng.uniform(-3.0, 3.0);
  }
  Vec64 query(7);
  for (double& x : query) x = rng.uniform(-3.0, 3.0);
  Vec64 serial, omp;
  squared_distance_scan_serial(points, query, serial);
  squared_distance_scan_omp(points, query, omp);
  CHECK(serial == omp);
}

TEST_CASE("similarity matrix: omp matches serial bit for bit") {
  ThreadGuard guard(4);
  const Catalog cat = synthetic_catalog(5, 150, 10);
  const Mat64 a = cosine_similarity_matrix_serial(cat.features);
  const Mat64 b = cosine_similarity_matrix_omp(cat.features);
  CHECK(a.values == b.values);
}

TEST_CASE("dispatching wrappers give identical results at any thread count") {
  Rng rng(109);
  const std::size_t n_dims = 6;
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(n_dims, 0.0, 10.0, 1.0);
  MlpParams critic = make_mlp({20 + n_dims, 16, 16, 1}, OutputActivation::Identity, rng);
  Vec64 feats(20);
  for (double& x : feats) x = rng.uniform(-1.0, 1.0);
  const Vec64 part = critic_state_part(critic, feats);
  std::vector<Vec64> actions(500, Vec64(n_dims));
  for (Vec64& a : actions) {
    for (double& x : a) x = static_cast<double>(rng.uniform_index(11));
  }

  Vec64 q1, q4;
  {
    ThreadGuard guard(1);
    critic_batch_eval(critic, part, spec, actions, q1);
  }
  {
    ThreadGuard guard(4);
    critic_batch_eval(critic, part, spec, actions, q4);
  }
  CHECK(q1 == q4);
}

TEST_CASE("CriticQOracle: bound and unbound evaluation agree") {
  Rng rng(113);
  const std::size_t n_dims = 3;
  const FourierBasisConfig b = basis(n_dims);
  const std::size_t n_feats = fourier_feature_count(b);
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(n_dims, 0.0, 10.0, 1.0);
  MlpParams critic = make_mlp({n_feats + n_dims, 24, 24, 1}, OutputActivation::Identity, rng);

  CriticQOracle oracle(critic, b, spec);
  const Vec64 state = {0.2, 0.5, 0.8};
  std::vector<Vec64> actions(20, Vec64(n_dims));
  for (Vec64& a : actions) {
    for (double& x : a) x = static_cast<double>(rng.uniform_index(11));
  }
  const Vec64 unbound = oracle.evaluate(state, actions);
  oracle.bind(state);
  const Vec64 bound = oracle.evaluate(state, actions);
  CHECK(unbound == bound);

  // different state than the bound one still evaluates correctly
  const Vec64 other_state = {0.9, 0.1, 0.3};
  const Vec64 other = oracle.evaluate(other_state, actions);
  CriticQOracle fresh(critic, b, spec);
  CHECK(other == fresh.evaluate(other_state, actions));
}
