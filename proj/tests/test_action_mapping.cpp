#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dnc/errors.hpp"
#include "dnc/mappers.hpp"
#include "dnc/neighborhood.hpp"
#include "dnc/sa_search.hpp"

using namespace dnc;

namespace {

ActionSpaceSpec spec1d(double lo, double hi, double step) {
  return ActionSpaceSpec::uniform(1, lo, hi, step);
}

SaParams slow_cooling(double fraction = 0.05) {
  SaParams sp;
  sp.k_init_fraction = 1.0;
  sp.cooling_fraction = fraction;
  sp.max_iters = 200;
  return sp;
}

}  // namespace

TEST_CASE("clip") {
  CHECK(clip(0.5, -1.0, 1.0) == 0.5);
  CHECK(clip(-3.0, -1.0, 1.0) == -1.0);
  CHECK(clip(7.0, -1.0, 1.0) == 1.0);
}

TEST_CASE("discretize_base: endpoints and midpoints") {
  const ActionSpaceSpec inv = spec1d(0.0, 66.0, 1.0);
  CHECK(discretize_base({-1.0}, inv)[0] == 0.0);
  CHECK(discretize_base({1.0}, inv)[0] == 66.0);
  CHECK(discretize_base({0.0}, inv)[0] == 33.0);
  CHECK(discretize_base({-5.0}, inv)[0] == 0.0);  // clipped below

  const ActionSpaceSpec rec = spec1d(0.0, 1.0, 0.01);
  CHECK(discretize_base({0.2}, rec)[0] == doctest::Approx(0.60).epsilon(1e-12));
  CHECK(rec.on_grid(discretize_base({0.2}, rec)));
}

TEST_CASE("discretize_base: rejects wrong dimension") {
  CHECK_THROWS(discretize_base({0.1, 0.2}, spec1d(0.0, 1.0, 1.0)));
}

TEST_CASE("minmax_map is discretize_base") {
  Rng rng(4);
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(3, -2.0, 8.0, 0.5);
  for (int i = 0; i < 1000; ++i) {
    Vec64 a_hat(3);
    for (double& x : a_hat) x = rng.uniform(-2.0, 2.0);
    CHECK(minmax_map(a_hat, spec) == discretize_base(a_hat, spec));
  }
  // mapper interface dispatch agrees with the direct call
  MinMaxMapper mapper(spec);
  FunctionQOracle oracle([](const Vec64&, const Vec64&) { return 0.0; });
  Rng r2(5);
  const Vec64 a_hat = {0.3, -0.7, 0.9};
  CHECK(mapper.map({0.0}, a_hat, oracle, r2) == minmax_map(a_hat, spec));
}

TEST_CASE("perturbation_matrix: worked examples") {
  {
    const Mat64 p = perturbation_matrix(2, {1, 1.0});
    REQUIRE(p.cols == 4);
    const std::vector<Vec64> cols = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(p.at(0, j) == cols[j][0]);
      CHECK(p.at(1, j) == cols[j][1]);
    }
  }
  {
    const Mat64 p = perturbation_matrix(2, {2, 1.0});
    REQUIRE(p.cols == 8);
    const std::vector<Vec64> cols = {{1, 0}, {0, 1}, {2, 0}, {0, 2},
                                     {-1, 0}, {0, -1}, {-2, 0}, {0, -2}};
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(p.at(0, j) == cols[j][0]);
      CHECK(p.at(1, j) == cols[j][1]);
    }
  }
}

TEST_CASE("perturbation_matrix: structure over random shapes") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(20);
    const PerturbationParams pp{1 + rng.uniform_index(5), rng.uniform(0.01, 3.0)};
    const Mat64 p = perturbation_matrix(n, pp);
    CHECK(p.rows == n);
    CHECK(p.cols == 2 * pp.depth * n);
    std::map<double, int> magnitudes;
    double max_norm = 0.0;
    for (std::size_t j = 0; j < p.cols; ++j) {
      int nonzero = 0;
      double norm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p.at(i, j) != 0.0) {
          ++nonzero;
          ++magnitudes[std::abs(p.at(i, j))];
        }
        norm2 += p.at(i, j) * p.at(i, j);
      }
      CHECK(nonzero == 1);
      max_norm = std::max(max_norm, std::sqrt(norm2));
    }
    // magnitudes are {eps, ..., d*eps}, each appearing 2N times
    CHECK(magnitudes.size() == pp.depth);
    for (const auto& [mag, count] : magnitudes) {
      (void)mag;
      CHECK(count == static_cast<int>(2 * n));
    }
    CHECK(max_norm == pp.epsilon * static_cast<double>(pp.depth));
  }
}

TEST_CASE("generate_neighbors: clamping and dedup at the corner") {
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(2, 0.0, 10.0, 1.0);
  const Neighborhood nbh = generate_neighbors({0.0, 0.0}, spec, {1, 1.0});
  REQUIRE(nbh.candidates.size() == 3);
  CHECK(nbh.candidates[0] == Vec64{0.0, 0.0});
  const std::set<Vec64> got(nbh.candidates.begin(), nbh.candidates.end());
  const std::set<Vec64> want = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  CHECK(got == want);
}

TEST_CASE("generate_neighbors: interior base") {
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(2, 0.0, 10.0, 1.0);
  const Neighborhood nbh = generate_neighbors({5.0, 5.0}, spec, {1, 1.0});
  CHECK(nbh.candidates.size() == 5);
  for (const Vec64& c : nbh.candidates) {
    CHECK(l2_distance(c, nbh.base) <= 1.0 + 1e-9);
    CHECK(spec.on_grid(c));
  }
}

TEST_CASE("generate_neighbors: interior distances reach exactly d*eps") {
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(2, 0.0, 10.0, 1.0);
  const Neighborhood nbh = generate_neighbors({5.0, 5.0}, spec, {2, 1.0});
  double max_dist = 0.0;
  for (const Vec64& c : nbh.candidates) {
    max_dist = std::max(max_dist, l2_distance(c, nbh.base));
  }
  CHECK(max_dist == doctest::Approx(2.0));
}

TEST_CASE("generate_neighbors: random invariants") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(6);
    const ActionSpaceSpec spec = ActionSpaceSpec::uniform(n, 0.0, 12.0, 1.0);
    const PerturbationParams pp{1 + rng.uniform_index(4), 1.0 + rng.uniform_index(2)};
    Vec64 base(n);
    for (double& x : base) x = static_cast<double>(rng.uniform_index(13));
    const Neighborhood nbh = generate_neighbors(base, spec, pp);
    CHECK(nbh.candidates.size() <= 2 * pp.depth * n + 1);
    CHECK(nbh.candidates[0] == base);
    const double reach = pp.epsilon * static_cast<double>(pp.depth) + 1e-9;
    std::set<Vec64> uniq;
    for (const Vec64& c : nbh.candidates) {
      CHECK(spec.on_grid(c));
      CHECK(l2_distance(c, base) <= reach);
      uniq.insert(c);
    }
    CHECK(uniq.size() == nbh.candidates.size());
  }
}

TEST_CASE("enumerate_action_space") {
  CHECK(enumerate_action_space(spec1d(0.0, 2.0, 1.0), 10) ==
        std::vector<Vec64>{{0.0}, {1.0}, {2.0}});
  CHECK(enumerate_action_space(ActionSpaceSpec::uniform(2, 0.0, 1.0, 1.0), 10).size() == 4);
  CHECK(enumerate_action_space(ActionSpaceSpec::uniform(2, 0.0, 66.0, 1.0), 5000).size() ==
        4489);
  CHECK_THROWS_AS(enumerate_action_space(ActionSpaceSpec::uniform(20, 0.0, 66.0, 1.0),
                                         100000),
                  CardinalityExceeded);
}

TEST_CASE("knn_map: examples") {
  const ActionSpaceSpec spec = spec1d(0.0, 10.0, 1.0);
  const auto actions = enumerate_action_space(spec, 100);
  const FunctionQOracle increasing([](const Vec64&, const Vec64& a) { return a[0]; });

  // k=1: nearest action regardless of Q
  CHECK(knn_map({0.0}, {3.4}, actions, 1, increasing) == Vec64{3.0});
  // k=2: neighbors {3,4}, Q increasing picks 4
  CHECK(knn_map({0.0}, {3.4}, actions, 2, increasing) == Vec64{4.0});
  // k=|A| equals brute force
  CHECK(knn_map({0.0}, {3.4}, actions, actions.size(), increasing) ==
        brute_force_best({0.0}, actions, increasing));
}

TEST_CASE("brute_force_best: ties and quadratic oracle") {
  const auto actions = enumerate_action_space(ActionSpaceSpec::uniform(2, 0.0, 3.0, 1.0), 100);
  const FunctionQOracle constant([](const Vec64&, const Vec64&) { return 1.0; });
  CHECK(brute_force_best({0.0}, actions, constant) == Vec64{0.0, 0.0});

  const Vec64 target = {2.0, 1.0};
  const FunctionQOracle quad([&](const Vec64&, const Vec64& a) {
    return -squared_distance(a, target);
  });
  CHECK(brute_force_best({0.0}, actions, quad) == target);
}

TEST_CASE("knn_map with k=|A| equals brute_force_best on random oracles") {
  Rng rng(1234);
  const auto actions = enumerate_action_space(ActionSpaceSpec::uniform(2, 0.0, 9.0, 1.0), 5000);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t salt = rng.next_u64();
    const FunctionQOracle oracle([salt](const Vec64&, const Vec64& a) {
      Rng h(salt ^ (static_cast<std::uint64_t>(a[0]) * 131 +
                    static_cast<std::uint64_t>(a[1])));
      return h.uniform(-5.0, 5.0);
    });
    Vec64 query(2);
    for (double& x : query) x = rng.uniform(0.0, 9.0);
    CHECK(knn_map({0.0}, query, actions, actions.size(), oracle) ==
          brute_force_best({0.0}, actions, oracle));
  }
}

TEST_CASE("lipschitz_estimate: examples and certificate") {
  const ActionSpaceSpec spec = spec1d(0.0, 10.0, 1.0);
  Neighborhood nbh = generate_neighbors({5.0}, spec, {1, 1.0});
  REQUIRE(nbh.candidates.size() == 3);

  nbh.q_values = {1.0, 1.0, 1.0};
  CHECK(lipschitz_estimate(nbh) == 0.0);

  Neighborhood pair;
  pair.base = {0.0};
  pair.candidates = {{0.0}, {1.0}};
  pair.q_values = {0.0, 2.0};
  CHECK(lipschitz_estimate(pair) == doctest::Approx(2.0));

  // certificate: |dQ| <= L * dist for every pair, via the same ratios
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(4);
    const ActionSpaceSpec s = ActionSpaceSpec::uniform(n, 0.0, 8.0, 1.0);
    Vec64 base(n);
    for (double& x : base) x = static_cast<double>(rng.uniform_index(9));
    Neighborhood h = generate_neighbors(base, s, {1 + rng.uniform_index(3), 1.0});
    h.q_values.resize(h.candidates.size());
    for (double& q : h.q_values) q = rng.uniform(-10.0, 10.0);
    const double lip = lipschitz_estimate(h);
    for (std::size_t i = 0; i < h.candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < h.candidates.size(); ++j) {
        const double dist = l2_distance(h.candidates[i], h.candidates[j]);
        CHECK(std::abs(h.q_values[i] - h.q_values[j]) / dist <= lip);
      }
    }
  }
}

TEST_CASE("lipschitz_estimate: needs two distinct candidates") {
  Neighborhood nbh;
  nbh.base = {0.0};
  nbh.candidates = {{0.0}};
  nbh.q_values = {1.0};
  CHECK_THROWS(lipschitz_estimate(nbh));
}

TEST_CASE("concave quadratic worst case is attained at maximal perturbations") {
  // Q(a) = C - ||a - base||^2; every neighbor's Q is >= the worst maximally
  // perturbed one.
  Rng rng(66);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(5);
    const std::size_t depth = 1 + rng.uniform_index(4);
    const double eps = 1.0;
    const ActionSpaceSpec spec = ActionSpaceSpec::uniform(n, -40.0, 40.0, 1.0);
    Vec64 base(n);
    for (double& x : base) x = static_cast<double>(rng.uniform_index(11)) - 5.0;
    const Neighborhood nbh = generate_neighbors(base, spec, {depth, eps});
    const double c0 = rng.uniform(-5.0, 5.0);
    auto q = [&](const Vec64& a) { return c0 - squared_distance(a, base); };

    const double reach = eps * static_cast<double>(depth);
    double worst_extreme = 1e300;
    for (const Vec64& cand : nbh.candidates) {
      if (std::abs(l2_distance(cand, base) - reach) < 1e-9) {
        worst_extreme = std::min(worst_extreme, q(cand));
      }
    }
    REQUIRE(worst_extreme < 1e300);  // interior base, extremes present
    for (const Vec64& cand : nbh.candidates) {
      CHECK(q(cand) >= worst_extreme);
    }
  }
}

TEST_CASE("sa_search: constant oracle returns the base action") {
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(2, 0.0, 10.0, 1.0);
  const FunctionQOracle constant([](const Vec64&, const Vec64&) { return 3.0; });
  Rng rng(1);
  const Vec64 got = sa_search({0.0}, {0.1, -0.4}, constant, spec, {1, 1.0}, SaParams{}, rng);
  CHECK(got == discretize_base({0.1, -0.4}, spec));
}

TEST_CASE("sa_search: climbs a 1-D quadratic to its argmax") {
  const ActionSpaceSpec spec = spec1d(0.0, 10.0, 1.0);
  const FunctionQOracle quad([](const Vec64&, const Vec64& a) {
    return -(a[0] - 7.0) * (a[0] - 7.0);
  });
  // a_hat = 0 maps to base 5; slow cooling lets greedy steps reach 7.
  Rng rng(2);
  const Vec64 got = sa_search({0.0}, {0.0}, quad, spec, {1, 1.0}, slow_cooling(), rng);
  CHECK(got == Vec64{7.0});
}

TEST_CASE("sa_search: result never scores below the base action") {
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(3, 0.0, 8.0, 1.0);
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t salt = rng.next_u64();
    const FunctionQOracle oracle([salt](const Vec64&, const Vec64& a) {
      std::uint64_t h = salt;
      for (double x : a) h = h * 1099511628211ULL + static_cast<std::uint64_t>(x + 1);
      return Rng(h).uniform(-10.0, 10.0);
    });
    Vec64 a_hat(3);
    for (double& x : a_hat) x = rng.uniform(-1.5, 1.5);
    SaParams sp;
    sp.cooling_fraction = 0.2;
    Rng search_rng = rng.fork(trial);
    const Vec64 got = sa_search({0.0}, a_hat, oracle, spec, {1, 1.0}, sp, search_rng);
    const Vec64 base = discretize_base(a_hat, spec);
    CHECK(oracle.evaluate_one({0.0}, got) >= oracle.evaluate_one({0.0}, base));
    CHECK(spec.on_grid(got));
  }
}

TEST_CASE("sa_search: terminates within max_iters even when k never cools") {
  const ActionSpaceSpec spec = spec1d(0.0, 4.0, 1.0);
  int calls = 0;
  const FunctionQOracle oracle([&calls](const Vec64&, const Vec64& a) {
    ++calls;
    return a[0];
  });
  SaParams sp;
  sp.k_init_fraction = 1.0;
  sp.cooling_fraction = 1e-9;  // k effectively frozen
  sp.max_iters = 7;
  Rng rng(8);
  CHECK_NOTHROW(sa_search({0.0}, {0.0}, oracle, spec, {1, 1.0}, sp, rng));
  CHECK(calls <= 7 * 3 + 7);
}

TEST_CASE("sa_search: reaches a global argmax far outside the initial neighborhood") {
  // Reachability at small scale: depth*eps spans the grid, slow cooling.
  const ActionSpaceSpec spec = ActionSpaceSpec::uniform(2, 0.0, 10.0, 1.0);
  const auto actions = enumerate_action_space(spec, 5000);
  const FunctionQOracle oracle([](const Vec64&, const Vec64& a) {
    return -squared_distance(a, {9.0, 9.0});
  });
  const Vec64 best = brute_force_best({0.0}, actions, oracle);
  REQUIRE(best == Vec64{9.0, 9.0});

  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(1000 + trial);
    // a_hat = (-0.8, -0.8) maps to base (1, 1)
    const Vec64 got = sa_search({0.0}, {-0.8, -0.8}, oracle, spec, {10, 1.0},
                                slow_cooling(0.05), rng);
    if (got == best) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("sa_search: acceptance-form switch changes behavior but stays on grid") {
  const ActionSpaceSpec spec = spec1d(0.0, 10.0, 1.0);
  const FunctionQOracle oracle([](const Vec64&, const Vec64& a) {
    return std::sin(a[0]);
  });
  SaParams sp;
  sp.acceptance_form = AcceptanceForm::Complement;
  Rng rng(13);
  const Vec64 got = sa_search({0.0}, {0.4}, oracle, spec, {1, 1.0}, sp, rng);
  CHECK(spec.on_grid(got));
}
