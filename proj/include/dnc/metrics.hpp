#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnc/training.hpp"

namespace dnc {

struct MetricsRow {
  std::uint64_t seed = 0;
  std::size_t episode = 0;
  double train_return = 0.0;
  bool has_eval = false;
  double eval_return = 0.0;
};

struct SeedMetrics {
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;
  double wall_clock_s = 0.0;  // telemetry; kept out of the deterministic CSVs
};

SeedMetrics metrics_from_result(std::uint64_t seed, const TrainResult& result);

// Schema: comment line `# dncbench metrics v1`, header
// `seed,episode,train_return,eval_return`; eval_return is blank between
// evaluation points. Values print with %.17g so reruns are byte-identical.
void write_metrics_csv(const SeedMetrics& m, const std::string& path);
SeedMetrics read_metrics_csv(const std::string& path);

struct SummaryRow {
  std::size_t episode = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample std, n-1 denominator; 0 for a single seed
  double corridor_lo = 0.0;  // mean - 2 std
  double corridor_hi = 0.0;  // mean + 2 std
  std::size_t n_seeds = 0;
};

// Per-eval-point statistics across seeds. Seeds are processed in ascending
// order so the result is independent of input ordering.
std::vector<SummaryRow> summarize(std::vector<SeedMetrics> per_seed);

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

void write_timing_csv(const std::vector<SeedMetrics>& per_seed, const std::string& path);

// 50x50 visitation counts over the unit square.
struct VisitGrid {
  std::size_t size = 50;
  std::vector<std::uint64_t> counts;

  VisitGrid() : counts(size * size, 0) {}
  explicit VisitGrid(std::size_t n) : size(n), counts(n * n, 0) {}

  void add(double x, double y);
  void merge(const VisitGrid& other);
  std::uint64_t total() const;
};

// Writes the counts as CSV and a log-scaled P2 graymap.
void export_heatmap(const VisitGrid& grid, const std::string& csv_path,
                    const std::string& pgm_path);

}  // namespace dnc
