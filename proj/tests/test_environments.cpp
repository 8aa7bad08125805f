#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "dnc/catalog.hpp"
#include "dnc/inventory_env.hpp"
#include "dnc/maze_env.hpp"
#include "dnc/recommender_env.hpp"

using namespace dnc;

namespace {

MazeConfig quiet_maze(std::size_t n = 4) {
  MazeConfig cfg = default_maze_config(n);
  cfg.noise_prob = 0.0;
  return cfg;
}

Vec64 zeros(std::size_t n) { return Vec64(n, 0.0); }

}  // namespace

TEST_CASE("maze: no actuators, no movement") {
  Rng rng(1);
  const MazeConfig cfg = quiet_maze();
  const StepResult r = maze_step({0.3, 0.3}, zeros(4), cfg, rng);
  CHECK(r.next_state == Vec64{0.3, 0.3});
  CHECK(r.reward == doctest::Approx(-0.05));
  CHECK_FALSE(r.done);
}

TEST_CASE("maze: single actuator moves along its angle") {
  Rng rng(1);
  const MazeConfig cfg = quiet_maze(4);
  const StepResult r = maze_step({0.3, 0.3}, {1.0, 0.0, 0.0, 0.0}, cfg, rng);
  CHECK(r.next_state[0] == doctest::Approx(0.35));
  CHECK(r.next_state[1] == doctest::Approx(0.3));
}

TEST_CASE("maze: reaching the goal pays out and terminates") {
  Rng rng(1);
  const MazeConfig cfg = quiet_maze(4);
  const StepResult r = maze_step({0.86, 0.9}, {1.0, 0.0, 0.0, 0.0}, cfg, rng);
  CHECK(r.reward == doctest::Approx(100.0));
  CHECK(r.done);
}

TEST_CASE("maze: wall and boundary cancel the move") {
  Rng rng(1);
  const MazeConfig cfg = quiet_maze(4);
  // default wall is [0, 0.6] x [0.45, 0.5]; move straight up into it
  const StepResult wall = maze_step({0.3, 0.42}, {0.0, 1.0, 0.0, 0.0}, cfg, rng);
  CHECK(wall.next_state == Vec64{0.3, 0.42});
  // leaving the square
  const StepResult edge = maze_step({0.02, 0.3}, {0.0, 0.0, 1.0, 0.0}, cfg, rng);
  CHECK(edge.next_state == Vec64{0.02, 0.3});
}

TEST_CASE("maze: multiple actuators average their directions") {
  Rng rng(1);
  const MazeConfig cfg = quiet_maze(4);
  // actuators at 0 and pi/2: displacement 0.05 * ((1,0)+(0,1))/2
  const StepResult r = maze_step({0.3, 0.3}, {1.0, 1.0, 0.0, 0.0}, cfg, rng);
  CHECK(r.next_state[0] == doctest::Approx(0.325));
  CHECK(r.next_state[1] == doctest::Approx(0.325));
}

TEST_CASE("maze: malformed actions rejected") {
  Rng rng(1);
  const MazeConfig cfg = quiet_maze(4);
  CHECK_THROWS(maze_step({0.3, 0.3}, {0.5, 0.0, 0.0, 0.0}, cfg, rng));
  CHECK_THROWS(maze_step({0.3, 0.3}, {1.0, 0.0}, cfg, rng));
}

TEST_CASE("maze: noise frequency matches noise_prob") {
  MazeConfig cfg = default_maze_config(4);
  cfg.walls.clear();
  Rng rng(99);
  int noisy = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const StepResult r = maze_step({0.5, 0.5}, zeros(4), cfg, rng);
    // with a zero action any movement is the noise draw
    if (r.next_state != Vec64{0.5, 0.5}) ++noisy;
  }
  const double frac = static_cast<double>(noisy) / n;
  CHECK(frac > 0.09);
  CHECK(frac < 0.11);
}

TEST_CASE("maze: random rollout stays inside the unit square") {
  const MazeEnv env(default_maze_config(6));
  Rng rng(5);
  Vec64 pos = env.reset(rng);
  for (int t = 0; t < 10000; ++t) {
    Vec64 a(6);
    for (double& x : a) x = rng.uniform01() < 0.5 ? 1.0 : 0.0;
    const StepResult r = env.step(pos, a, rng);
    CHECK(r.next_state[0] >= 0.0);
    CHECK(r.next_state[0] <= 1.0);
    CHECK(r.next_state[1] >= 0.0);
    CHECK(r.next_state[1] <= 1.0);
    CHECK((r.reward == -0.05 || r.reward == 100.0));
    pos = r.done ? env.reset(rng) : r.next_state;
  }
}

TEST_CASE("maze: layout file round trip") {
  const std::string path = "maze_layout_test.txt";
  {
    std::ofstream out(path);
    out << "# test layout\n";
    out << "start 0.2 0.2\n";
    out << "goal 0.8 0.8 0.1\n";
    out << "wall 0.4 0.0 0.5 0.6\n";
  }
  MazeConfig cfg = default_maze_config(4);
  load_maze_layout(path, cfg);
  CHECK(cfg.start_x == 0.2);
  CHECK(cfg.goal_radius == 0.1);
  REQUIRE(cfg.walls.size() == 1);
  CHECK(cfg.walls[0].x1 == 0.5);
  std::remove(path.c_str());
}

TEST_CASE("project_to_catalog") {
  Mat64 catalog(2, 2);
  catalog.at(0, 0) = 0.0;
  catalog.at(0, 1) = 0.0;
  catalog.at(1, 0) = 1.0;
  catalog.at(1, 1) = 1.0;
  CHECK(project_to_catalog({0.1, 0.0}, catalog) == 0);
  CHECK(project_to_catalog({1.0, 1.0}, catalog) == 1);

  const Catalog synth = synthetic_catalog(3, 40, 6);
  for (std::size_t i = 0; i < synth.features.rows; ++i) {
    const double* row = synth.features.row(i);
    CHECK(project_to_catalog(Vec64(row, row + 6), synth.features) == i);
  }
}

TEST_CASE("recommender: pick probabilities") {
  CHECK(pick_probability(0.0) == doctest::Approx(0.5));
  CHECK(pick_probability(1.0) == doctest::Approx(0.9933071490757153));
  double prev = -1.0;
  for (double s = -1.0; s <= 1.0; s += 0.05) {
    const double p = pick_probability(s);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("recommender: accepted picks pay the item reward, rejections pay zero") {
  CatalogEnvConfig cfg;
  cfg.catalog = synthetic_catalog(11, 50, 8);
  cfg.n_recommend = 1;
  const RecommenderEnv env(std::move(cfg));
  const Catalog& cat = env.config().catalog;

  Rng rng(3);
  Vec64 state = env.reset(rng);
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 2000; ++t) {
    // recommend the last item itself: S = 1, acceptance ~0.9933
    const StepResult r = env.step(state, state, rng);
    if (r.reward != 0.0) {
      ++accepted;
      // reward equals the tier reward of some catalog item
      CHECK((r.reward == 1.0 || r.reward == 10.0 || r.reward == 30.0));
      // accepted item is the recommended (= last) one
      CHECK(r.next_state == state);
    } else {
      ++rejected;
    }
    state = r.next_state;
    if (r.done) state = env.reset(rng);
  }
  CHECK(accepted > 1900);  // acceptance probability ~0.9933 at S=1
  CHECK(rejected < 100);
}

TEST_CASE("recommender: episode-end frequencies match 0.1 and 0.2") {
  CatalogEnvConfig cfg;
  cfg.catalog = synthetic_catalog(17, 30, 6);
  cfg.n_recommend = 1;
  const RecommenderEnv env(std::move(cfg));

  Rng rng(7);
  Vec64 state = env.reset(rng);
  long pick_events = 0, pick_ends = 0, other_events = 0, other_ends = 0;
  for (int t = 0; t < 100000; ++t) {
    const StepResult r = env.step(state, state, rng);
    if (r.reward != 0.0) {
      ++pick_events;
      if (r.done) ++pick_ends;
    } else {
      ++other_events;
      if (r.done) ++other_ends;
    }
    state = r.done ? env.reset(rng) : r.next_state;
  }
  CHECK(std::abs(static_cast<double>(pick_ends) / pick_events - 0.1) < 0.01);
  CHECK(std::abs(static_cast<double>(other_ends) / std::max(other_events, 1L) - 0.2) < 0.05);
}

TEST_CASE("recommender: action length must be n_recommend * features") {
  CatalogEnvConfig cfg;
  cfg.catalog = synthetic_catalog(19, 20, 5);
  cfg.n_recommend = 2;
  const RecommenderEnv env(std::move(cfg));
  Rng rng(1);
  const Vec64 state = env.reset(rng);
  CHECK_THROWS(env.step(state, Vec64(5, 0.5), rng));
  CHECK_NOTHROW(env.step(state, Vec64(10, 0.5), rng));
}

TEST_CASE("inventory: hand-checked step with zero demand") {
  InventoryConfig cfg = default_inventory_config(1);
  cfg.demand_rates = {0.0};
  Rng rng(1);
  const StepResult r = inventory_step({5.0}, {10.0}, cfg, rng);
  CHECK(r.next_state == Vec64{10.0});
  // holding 10*1 + per-item order 10 + common order 75
  CHECK(r.reward == doctest::Approx(-95.0));
}

TEST_CASE("inventory: backorder cost") {
  // Post-demand level -3 with no order placed: stock 2, target 2 (q = 0),
  // demand 5. Pick a seed whose Poisson(5) draw is exactly 5.
  InventoryConfig cfg = default_inventory_config(1);
  cfg.demand_rates = {5.0};
  std::uint64_t seed = 0;
  for (std::uint64_t s = 1; s < 1000; ++s) {
    if (Rng(s).poisson(5.0) == 5) {
      seed = s;
      break;
    }
  }
  REQUIRE(seed != 0);
  Rng rng(seed);
  const StepResult r = inventory_step({2.0}, {2.0}, cfg, rng);
  CHECK(r.next_state == Vec64{-3.0});
  CHECK(r.reward == doctest::Approx(-57.0));  // 3 * 19, backorder term only
}

TEST_CASE("inventory: order-up-to from backordered stock covers the deficit") {
  InventoryConfig cfg = default_inventory_config(1);
  cfg.demand_rates = {0.0};
  Rng rng(1);
  // level -3, target 0: orders 3 units, ends at 0 with ordering costs only
  const StepResult r = inventory_step({-3.0}, {0.0}, cfg, rng);
  CHECK(r.next_state == Vec64{0.0});
  CHECK(r.reward == doctest::Approx(-(10.0 + 75.0)));
}

TEST_CASE("inventory: no order when levels already meet the target") {
  InventoryConfig cfg = default_inventory_config(2);
  cfg.demand_rates = {0.0, 0.0};
  Rng rng(1);
  const StepResult r = inventory_step({30.0, 7.0}, {20.0, 7.0}, cfg, rng);
  // holding only: 30 + 7
  CHECK(r.reward == doctest::Approx(-37.0));
}

TEST_CASE("inventory: rejects invalid order-up-to levels") {
  const InventoryConfig cfg = default_inventory_config(1);
  Rng rng(1);
  CHECK_THROWS(inventory_step({5.0}, {67.0}, cfg, rng));
  CHECK_THROWS(inventory_step({5.0}, {-1.0}, cfg, rng));
  CHECK_THROWS(inventory_step({5.0}, {3.5}, cfg, rng));
}

TEST_CASE("inventory: rewards never positive, order-up-to semantics hold") {
  const InventoryEnv env(default_inventory_config(3));
  Rng rng(13);
  Vec64 levels = env.reset(rng);
  for (int t = 0; t < 5000; ++t) {
    Vec64 s(3);
    for (double& x : s) x = static_cast<double>(rng.uniform_index(67));
    const StepResult r = env.step(levels, s, rng);
    CHECK(r.reward <= 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(r.next_state[i] <= 66.0);
    }
    levels = r.next_state;
  }
}

TEST_CASE("inventory: poisson demand empirical mean") {
  Rng rng(21);
  for (double lambda : {10.0, 20.0}) {
    double sum = 0.0;
    const long n = 1000000;
    for (long i = 0; i < n; ++i) sum += static_cast<double>(rng.poisson(lambda));
    const double mean = sum / static_cast<double>(n);
    CHECK(std::abs(mean - lambda) / lambda < 0.01);
  }
}

TEST_CASE("environments: identical seeds give identical trajectories") {
  const InventoryEnv env(default_inventory_config(2));
  auto rollout = [&](std::uint64_t seed) {
    Rng rng(seed);
    Vec64 s = env.reset(rng);
    Vec64 trace;
    for (int t = 0; t < 50; ++t) {
      Vec64 a(2);
      for (double& x : a) x = static_cast<double>(rng.uniform_index(67));
      const StepResult r = env.step(s, a, rng);
      trace.push_back(r.reward);
      s = r.next_state;
    }
    return trace;
  };
  CHECK(rollout(77) == rollout(77));
  CHECK(rollout(77) != rollout(78));
}
