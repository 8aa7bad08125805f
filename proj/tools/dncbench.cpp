// Experiment runner: trains (method x environment x seed) grids and writes
// CSV metrics, cross-seed summaries, and maze visitation heatmaps.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "dnc/catalog.hpp"
#include "dnc/errors.hpp"
#include "dnc/experiment.hpp"

namespace {

int run_command(const std::string& config_path,
                const std::vector<std::string>& extras) {
  dnc::KeyValues kv;
  if (!config_path.empty()) kv = dnc::parse_config_file(config_path);

  // Remaining arguments are `--key value` overrides.
  for (std::size_t i = 0; i < extras.size(); i += 2) {
    const std::string& key = extras[i];
    if (key.rfind("--", 0) != 0 || i + 1 >= extras.size()) {
      throw dnc::ConfigError("overrides must come as --key value pairs, got '" + key + "'");
    }
    kv[key.substr(2)] = extras[i + 1];
  }

  const dnc::ExperimentConfig cfg = dnc::resolve_experiment_config(std::move(kv));
  std::string message;
  const dnc::RunStatus status = dnc::run_experiment(cfg, &message);
  std::printf("%s\n", message.c_str());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dncbench: large-discrete-action-space RL benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment grid from a config file");
  run->add_option("--config", config_path, "key=value config file");
  run->allow_extras();

  std::string dir;
  auto* summarize = app.add_subcommand("summarize", "Recompute summary.csv for a run dir");
  summarize->add_option("--dir", dir, "directory with metrics_seed*.csv")->required();

  std::string movies, out;
  auto* ingest = app.add_subcommand("ingest", "Build an item catalog from movies.csv");
  ingest->add_option("--movies", movies, "path to movies.csv")->required();
  ingest->add_option("--out", out, "output catalog csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      return run_command(config_path, run->remaining());
    }
    if (summarize->parsed()) {
      std::string message;
      const dnc::RunStatus status = dnc::summarize_dir(dir, &message);
      std::printf("%s\n", message.c_str());
      return static_cast<int>(status);
    }
    if (ingest->parsed()) {
      const dnc::IngestStats stats = dnc::ingest_movies(movies, out);
      std::printf("ingested %zu records -> %zu unique rows x %zu features%s\n",
                  stats.n_records, stats.n_unique_rows, stats.n_features,
                  stats.from_cache ? " (from cache)" : "");
      return 0;
    }
  } catch (const dnc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const dnc::CardinalityExceeded& e) {
    std::fprintf(stderr, "skipped: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
