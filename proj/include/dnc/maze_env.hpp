#pragma once

#include <string>
#include <vector>

#include "dnc/env.hpp"

namespace dnc {

struct WallRect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

// Unit-square maze. The agent toggles N actuators equally spaced around it;
// active actuators push it in the direction they point, moves that would
// cross a wall or leave the square are cancelled.
struct MazeConfig {
  std::size_t n_actuators = 8;
  double step_length = 0.05;
  double noise_prob = 0.1;
  double step_reward = -0.05;
  double goal_reward = 100.0;
  std::size_t horizon = 150;
  std::vector<WallRect> walls;
  double start_x = 0.1, start_y = 0.1;
  double goal_x = 0.9, goal_y = 0.9, goal_radius = 0.05;

  void validate() const;
};

// One horizontal wall across most of the square, start bottom-left, goal
// top-right.
MazeConfig default_maze_config(std::size_t n_actuators);

// Layout file: lines of `start x y`, `goal x y radius`, `wall x0 y0 x1 y1`;
// '#' starts a comment. Geometry replaces the defaults, other fields stay.
void load_maze_layout(const std::string& path, MazeConfig& cfg);

// Single transition; exposed for tests.
StepResult maze_step(const Vec64& pos, const Vec64& action, const MazeConfig& cfg,
                     Rng& rng);

class MazeEnv : public EnvContract {
 public:
  explicit MazeEnv(MazeConfig cfg);
  Vec64 reset(Rng& rng) const override;
  StepResult step(const Vec64& state, const Vec64& action, Rng& rng) const override;
  const ActionSpaceSpec& action_spec() const override { return spec_; }
  std::size_t state_dim() const override { return 2; }
  std::vector<std::pair<double, double>> state_bounds() const override;
  std::size_t horizon() const override { return cfg_.horizon; }
  const char* name() const override { return "maze"; }
  const MazeConfig& config() const { return cfg_; }

 private:
  MazeConfig cfg_;
  ActionSpaceSpec spec_;
};

}  // namespace dnc
