#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dnc/env.hpp"
#include "dnc/mappers.hpp"
#include "dnc/training.hpp"

namespace dnc {

using KeyValues = std::map<std::string, std::string>;

// Flat `key = value` config file; '#' starts a comment.
KeyValues parse_config_file(const std::string& path);

struct ExperimentConfig {
  std::string environment;  // maze | recommender | inventory
  std::string method;       // dnc | minmax | knn | vac
  std::vector<std::uint64_t> seeds;
  TrainConfig train;
  PerturbationParams pparams;
  SaParams sparams;
  std::size_t knn_k = 10;
  std::size_t n_actuators = 8;
  std::size_t n_items = 2;
  std::size_t n_recommend = 1;
  std::string maze_layout;  // optional layout file
  std::string catalog;      // csv path or synthetic:<rows>:<features>:<seed>
  std::string output_dir;
  int threads = 1;
  bool heatmap = false;
  KeyValues resolved;  // every key explicit; written as the config snapshot
};

// Fills defaults (per-environment values from the benchmark defaults table),
// validates names and types, rejects unknown keys.
ExperimentConfig resolve_experiment_config(KeyValues kv);

enum class RunStatus : int {
  Ok = 0,
  BadConfig = 2,
  Infeasible = 3,  // method cannot handle the action space (enumeration too large)
};

// Runs (method x seeds) and writes per-seed metrics CSVs, a cross-seed
// summary, a timing sidecar, the config snapshot, and (maze) visitation
// heatmaps into output_dir.
RunStatus run_experiment(const ExperimentConfig& cfg, std::string* message = nullptr);

// Recomputes summary.csv from the metrics_seed*.csv files in dir.
RunStatus summarize_dir(const std::string& dir, std::string* message = nullptr);

std::unique_ptr<EnvContract> build_environment(const ExperimentConfig& cfg);

// May throw CardinalityExceeded for knn. Returns nullptr for vac (which does
// not use a mapper).
std::unique_ptr<Mapper> build_mapper(const ExperimentConfig& cfg,
                                     const ActionSpaceSpec& spec);

// Prefixes relative paths with $DNCBENCH_OUTPUT_ROOT when set.
std::string resolve_output_dir(const std::string& dir);

}  // namespace dnc
