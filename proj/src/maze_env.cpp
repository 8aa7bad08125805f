#include "dnc/maze_env.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dnc {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool point_in_rect(double x, double y, const WallRect& r) {
  return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
}

// Liang-Barsky style segment/AABB overlap test (closed rectangle).
bool segment_hits_rect(double ax, double ay, double bx, double by, const WallRect& r) {
  const double dx = bx - ax;
  const double dy = by - ay;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {ax - r.x0, r.x1 - ax, ay - r.y0, r.y1 - ay};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) {
        if (t > t0) t0 = t;
      } else {
        if (t < t1) t1 = t;
      }
    }
  }
  return t0 <= t1;
}

bool inside_wall(double x, double y, const MazeConfig& cfg) {
  for (const WallRect& w : cfg.walls) {
    if (point_in_rect(x, y, w)) return true;
  }
  return false;
}

}  // namespace

void MazeConfig::validate() const {
  if (n_actuators < 1) throw std::invalid_argument("maze: need at least one actuator");
  if (noise_prob < 0.0 || noise_prob > 1.0) {
    throw std::invalid_argument("maze: noise_prob outside [0,1]");
  }
  if (!(step_length > 0.0)) throw std::invalid_argument("maze: step_length must be > 0");
  auto in_square = [](double x, double y) {
    return x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0;
  };
  if (!in_square(start_x, start_y) || !in_square(goal_x, goal_y)) {
    throw std::invalid_argument("maze: start/goal outside unit square");
  }
  if (inside_wall(start_x, start_y, *this) || inside_wall(goal_x, goal_y, *this)) {
    throw std::invalid_argument("maze: start/goal inside a wall");
  }
}

MazeConfig default_maze_config(std::size_t n_actuators) {
  MazeConfig cfg;
  cfg.n_actuators = n_actuators;
  cfg.walls = {{0.0, 0.45, 0.6, 0.5}};
  cfg.validate();
  return cfg;
}

void load_maze_layout(const std::string& path, MazeConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("maze layout: cannot open " + path);
  cfg.walls.clear();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    bool ok = true;
    if (kind == "start") {
      ok = static_cast<bool>(ss >> cfg.start_x >> cfg.start_y);
    } else if (kind == "goal") {
      ok = static_cast<bool>(ss >> cfg.goal_x >> cfg.goal_y >> cfg.goal_radius);
    } else if (kind == "wall") {
      WallRect w;
      ok = static_cast<bool>(ss >> w.x0 >> w.y0 >> w.x1 >> w.y1);
      if (ok) cfg.walls.push_back(w);
    } else {
      ok = false;
    }
    if (!ok) {
      throw std::runtime_error("maze layout: bad line " + std::to_string(line_no) +
                               " in " + path);
    }
  }
  cfg.validate();
}

StepResult maze_step(const Vec64& pos, const Vec64& action, const MazeConfig& cfg,
                     Rng& rng) {
  if (pos.size() != 2) throw std::invalid_argument("maze_step: position must be 2-D");
  if (action.size() != cfg.n_actuators) {
    throw std::invalid_argument("maze_step: action size != actuator count");
  }
  double dx = 0.0, dy = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < action.size(); ++i) {
    if (action[i] != 0.0 && action[i] != 1.0) {
      throw std::invalid_argument("maze_step: action entries must be 0 or 1");
    }
    if (action[i] == 1.0) {
      const double angle = kTwoPi * static_cast<double>(i) /
                           static_cast<double>(cfg.n_actuators);
      dx += std::cos(angle);
      dy += std::sin(angle);
      ++active;
    }
  }
  const double denom = active == 0 ? 1.0 : static_cast<double>(active);
  dx = cfg.step_length * dx / denom;
  dy = cfg.step_length * dy / denom;

  if (rng.uniform01() < cfg.noise_prob) {
    dx += rng.uniform(-cfg.step_length, cfg.step_length);
    dy += rng.uniform(-cfg.step_length, cfg.step_length);
  }

  double nx = pos[0] + dx;
  double ny = pos[1] + dy;

  bool blocked = nx < 0.0 || nx > 1.0 || ny < 0.0 || ny > 1.0;
  if (!blocked) {
    for (const WallRect& w : cfg.walls) {
      if (segment_hits_rect(pos[0], pos[1], nx, ny, w)) {
        blocked = true;
        break;
      }
    }
  }
  if (blocked) {
    nx = pos[0];
    ny = pos[1];
  }

  StepResult r;
  r.next_state = {nx, ny};
  const double gx = nx - cfg.goal_x;
  const double gy = ny - cfg.goal_y;
  if (std::sqrt(gx * gx + gy * gy) <= cfg.goal_radius) {
    r.reward = cfg.goal_reward;
    r.done = true;
  } else {
    r.reward = cfg.step_reward;
    r.done = false;
  }
  return r;
}

MazeEnv::MazeEnv(MazeConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  spec_ = ActionSpaceSpec::uniform(cfg_.n_actuators, 0.0, 1.0, 1.0);
}

Vec64 MazeEnv::reset(Rng&) const { return {cfg_.start_x, cfg_.start_y}; }

StepResult MazeEnv::step(const Vec64& state, const Vec64& action, Rng& rng) const {
  return maze_step(state, action, cfg_, rng);
}

std::vector<std::pair<double, double>> MazeEnv::state_bounds() const {
  return {{0.0, 1.0}, {0.0, 1.0}};
}

}  // namespace dnc
