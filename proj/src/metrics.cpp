#include "dnc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dnc {

SeedMetrics metrics_from_result(std::uint64_t seed, const TrainResult& result) {
  SeedMetrics m;
  m.seed = seed;
  m.wall_clock_s = result.wall_seconds;
  std::map<std::size_t, double> evals;
  for (const EvalPoint& p : result.eval_points) evals[p.episode] = p.mean_return;
  m.rows.reserve(result.episode_returns.size());
  for (std::size_t i = 0; i < result.episode_returns.size(); ++i) {
    MetricsRow row;
    row.seed = seed;
    row.episode = i + 1;
    row.train_return = result.episode_returns[i];
    const auto it = evals.find(row.episode);
    if (it != evals.end()) {
      row.has_eval = true;
      row.eval_return = it->second;
    }
    m.rows.push_back(row);
  }
  return m;
}

void write_metrics_csv(const SeedMetrics& m, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_metrics_csv: cannot write " + path);
  std::fprintf(f, "# dncbench metrics v1\n");
  std::fprintf(f, "seed,episode,train_return,eval_return\n");
  for (const MetricsRow& r : m.rows) {
    std::fprintf(f, "%llu,%zu,%.17g,", static_cast<unsigned long long>(r.seed), r.episode,
                 r.train_return);
    if (r.has_eval) std::fprintf(f, "%.17g", r.eval_return);
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

SeedMetrics read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_metrics_csv: cannot open " + path);
  SeedMetrics m;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "seed,episode,train_return,eval_return") {
        throw std::runtime_error("read_metrics_csv: unexpected header in " + path);
      }
      saw_header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    MetricsRow r;
    std::getline(ss, cell, ',');
    r.seed = std::stoull(cell);
    std::getline(ss, cell, ',');
    r.episode = std::stoul(cell);
    std::getline(ss, cell, ',');
    r.train_return = std::stod(cell);
    if (std::getline(ss, cell, ',') && !cell.empty()) {
      r.has_eval = true;
      r.eval_return = std::stod(cell);
    }
    m.rows.push_back(r);
  }
  if (!m.rows.empty()) m.seed = m.rows.front().seed;
  return m;
}

std::vector<SummaryRow> summarize(std::vector<SeedMetrics> per_seed) {
  if (per_seed.empty()) throw std::invalid_argument("summarize: no seeds");
  std::sort(per_seed.begin(), per_seed.end(),
            [](const SeedMetrics& a, const SeedMetrics& b) { return a.seed < b.seed; });

  // episode -> eval returns in ascending seed order
  std::map<std::size_t, std::vector<double>> points;
  for (const SeedMetrics& m : per_seed) {
    for (const MetricsRow& r : m.rows) {
      if (r.has_eval) points[r.episode].push_back(r.eval_return);
    }
  }
  std::vector<SummaryRow> out;
  out.reserve(points.size());
  for (const auto& [episode, values] : points) {
    SummaryRow row;
    row.episode = episode;
    row.n_seeds = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean) * (v - row.mean);
      row.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    row.corridor_lo = row.mean - 2.0 * row.stddev;
    row.corridor_hi = row.mean + 2.0 * row.stddev;
    out.push_back(row);
  }
  return out;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_summary_csv: cannot write " + path);
  std::fprintf(f, "# dncbench summary v1\n");
  std::fprintf(f, "episode,n_seeds,mean_eval_return,std_eval_return,corridor_lo,corridor_hi\n");
  for (const SummaryRow& r : rows) {
    std::fprintf(f, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", r.episode, r.n_seeds, r.mean,
                 r.stddev, r.corridor_lo, r.corridor_hi);
  }
  std::fclose(f);
}

void write_timing_csv(const std::vector<SeedMetrics>& per_seed, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_timing_csv: cannot write " + path);
  std::fprintf(f, "# dncbench timing v1 (telemetry; excluded from determinism checks)\n");
  std::fprintf(f, "seed,wall_clock_s\n");
  for (const SeedMetrics& m : per_seed) {
    std::fprintf(f, "%llu,%.3f\n", static_cast<unsigned long long>(m.seed), m.wall_clock_s);
  }
  std::fclose(f);
}

void VisitGrid::add(double x, double y) {
  auto bin = [&](double v) {
    long b = static_cast<long>(std::floor(v * static_cast<double>(size)));
    if (b < 0) b = 0;
    if (b >= static_cast<long>(size)) b = static_cast<long>(size) - 1;
    return static_cast<std::size_t>(b);
  };
  ++counts[bin(y) * size + bin(x)];
}

void VisitGrid::merge(const VisitGrid& other) {
  if (other.size != size) throw std::invalid_argument("VisitGrid::merge: size mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

std::uint64_t VisitGrid::total() const {
  std::uint64_t t = 0;
  for (std::uint64_t c : counts) t += c;
  return t;
}

void export_heatmap(const VisitGrid& grid, const std::string& csv_path,
                    const std::string& pgm_path) {
  if (grid.size == 0) throw std::invalid_argument("export_heatmap: empty grid");
  {
    std::FILE* f = std::fopen(csv_path.c_str(), "wb");
    if (!f) throw std::runtime_error("export_heatmap: cannot write " + csv_path);
    std::fprintf(f, "# dncbench heatmap v1 (row 0 = y bin 0)\n");
    for (std::size_t y = 0; y < grid.size; ++y) {
      for (std::size_t x = 0; x < grid.size; ++x) {
        std::fprintf(f, "%llu%s",
                     static_cast<unsigned long long>(grid.counts[y * grid.size + x]),
                     x + 1 == grid.size ? "\n" : ",");
      }
    }
    std::fclose(f);
  }
  {
    std::uint64_t mx = 0;
    for (std::uint64_t c : grid.counts) mx = c > mx ? c : mx;
    const double denom = mx > 0 ? std::log1p(static_cast<double>(mx)) : 1.0;
    std::FILE* f = std::fopen(pgm_path.c_str(), "wb");
    if (!f) throw std::runtime_error("export_heatmap: cannot write " + pgm_path);
    std::fprintf(f, "P2\n%zu %zu\n255\n", grid.size, grid.size);
    // Image rows top-down: y bin (size-1) first.
    for (std::size_t y = grid.size; y-- > 0;) {
      for (std::size_t x = 0; x < grid.size; ++x) {
        const std::uint64_t c = grid.counts[y * grid.size + x];
        const int v = c == 0 ? 0
                             : static_cast<int>(std::lround(
                                   255.0 * std::log1p(static_cast<double>(c)) / denom));
        std::fprintf(f, "%d%s", v, x + 1 == grid.size ? "\n" : " ");
      }
    }
    std::fclose(f);
  }
}

}  // namespace dnc
