#include "dnc/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dnc/catalog.hpp"
#include "dnc/errors.hpp"
#include "dnc/inventory_env.hpp"
#include "dnc/kernels.hpp"
#include "dnc/maze_env.hpp"
#include "dnc/metrics.hpp"
#include "dnc/recommender_env.hpp"

namespace dnc {
namespace fs = std::filesystem;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "environment", "method", "seeds", "n_episodes", "eval_every", "eval_episodes",
      "gamma", "alpha_cr", "alpha_ac", "sigma", "actor_nodes", "critic_nodes",
      "fourier_order", "fourier_coupled", "depth", "epsilon", "k_init_fraction",
      "cooling_fraction", "beta_init", "max_iters", "acceptance_form", "knn_k",
      "enumeration_limit", "n_actuators", "n_items", "n_recommend", "maze_layout",
      "catalog", "output_dir", "threads", "heatmap"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void set_default(KeyValues& kv, const std::string& key, const std::string& value) {
  kv.emplace(key, value);
}

double get_double(const KeyValues& kv, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(kv.at(key), &pos);
    if (pos != kv.at(key).size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + kv.at(key));
  }
}

std::size_t get_size(const KeyValues& kv, const std::string& key) {
  try {
    const long long v = std::stoll(kv.at(key));
    if (v < 0) throw std::invalid_argument("negative");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + kv.at(key));
  }
}

bool get_bool(const KeyValues& kv, const std::string& key) {
  const std::string& v = kv.at(key);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("config: bad boolean value for '" + key + "': " + v);
}

}  // namespace

KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected key=value");
    }
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

ExperimentConfig resolve_experiment_config(KeyValues kv) {
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!known_keys().count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  if (!kv.count("environment")) throw ConfigError("config: missing 'environment'");
  if (!kv.count("method")) throw ConfigError("config: missing 'method'");
  const std::string env = kv.at("environment");
  const std::string method = kv.at("method");
  if (env != "maze" && env != "recommender" && env != "inventory") {
    throw ConfigError("config: unknown environment '" + env + "'");
  }
  if (method != "dnc" && method != "minmax" && method != "knn" && method != "vac") {
    throw ConfigError("config: unknown method '" + method + "'");
  }

  // Benchmark defaults, per environment.
  set_default(kv, "seeds", "1");
  set_default(kv, "n_episodes", "1000");
  set_default(kv, "eval_every", "100");
  set_default(kv, "eval_episodes", "5");
  set_default(kv, "gamma", "0.99");
  set_default(kv, "fourier_order", "3");
  set_default(kv, "k_init_fraction", "0.1");
  set_default(kv, "cooling_fraction", "0.25");
  set_default(kv, "beta_init", "0.99");
  set_default(kv, "max_iters", "100");
  set_default(kv, "acceptance_form", "exp");
  set_default(kv, "enumeration_limit", "100000");
  set_default(kv, "threads", "1");
  set_default(kv, "maze_layout", "");
  set_default(kv, "output_dir", "runs/" + env + "_" + method);
  if (env == "maze") {
    set_default(kv, "alpha_cr", "0.01");
    set_default(kv, "alpha_ac", "0.001");
    set_default(kv, "sigma", "1");
    set_default(kv, "actor_nodes", "0");
    set_default(kv, "critic_nodes", "32");
    set_default(kv, "fourier_coupled", "1");
    set_default(kv, "depth", "1");
    set_default(kv, "epsilon", "1");
    set_default(kv, "knn_k", "2");
    set_default(kv, "heatmap", "1");
  } else if (env == "recommender") {
    set_default(kv, "alpha_cr", "0.001");
    set_default(kv, "alpha_ac", "0.0001");
    set_default(kv, "sigma", "0.25");
    set_default(kv, "actor_nodes", "0");
    set_default(kv, "critic_nodes", "64");
    set_default(kv, "fourier_coupled", "0");
    set_default(kv, "depth", "5");
    set_default(kv, "epsilon", "0.05");
    set_default(kv, "knn_k", "20");
    set_default(kv, "heatmap", "0");
  } else {
    set_default(kv, "alpha_cr", "0.01");
    set_default(kv, "alpha_ac", "0.001");
    set_default(kv, "sigma", "0.5");
    set_default(kv, "actor_nodes", "32");
    set_default(kv, "critic_nodes", "64");
    set_default(kv, "fourier_coupled", "0");
    set_default(kv, "depth", "1");
    set_default(kv, "epsilon", "1");
    set_default(kv, "knn_k", "10");
    set_default(kv, "heatmap", "0");
  }
  set_default(kv, "n_actuators", "8");
  set_default(kv, "n_items", "2");
  set_default(kv, "n_recommend", "1");
  set_default(kv, "catalog", "synthetic:200:23:9001");

  ExperimentConfig cfg;
  cfg.environment = env;
  cfg.method = method;

  {
    std::stringstream ss(kv.at("seeds"));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      try {
        cfg.seeds.push_back(std::stoull(tok));
      } catch (const std::exception&) {
        throw ConfigError("config: bad seed '" + tok + "'");
      }
    }
    if (cfg.seeds.empty()) throw ConfigError("config: no seeds given");
    std::set<std::uint64_t> uniq(cfg.seeds.begin(), cfg.seeds.end());
    if (uniq.size() != cfg.seeds.size()) throw ConfigError("config: duplicate seeds");
  }

  cfg.train.gamma = get_double(kv, "gamma");
  cfg.train.alpha_cr = get_double(kv, "alpha_cr");
  cfg.train.alpha_ac = get_double(kv, "alpha_ac");
  if (kv.at("sigma") == "learned") {
    cfg.train.sigma_mode = SigmaMode::Learned;
    cfg.train.sigma_value = 0.0;
  } else {
    cfg.train.sigma_mode = SigmaMode::Constant;
    cfg.train.sigma_value = get_double(kv, "sigma");
  }
  cfg.train.n_episodes = get_size(kv, "n_episodes");
  cfg.train.eval_every = get_size(kv, "eval_every");
  cfg.train.eval_episodes = get_size(kv, "eval_episodes");
  cfg.train.actor_nodes = get_size(kv, "actor_nodes");
  cfg.train.critic_nodes = get_size(kv, "critic_nodes");
  cfg.train.fourier_order = get_size(kv, "fourier_order");
  cfg.train.fourier_coupled = get_bool(kv, "fourier_coupled");
  cfg.train.enumeration_limit = get_size(kv, "enumeration_limit");

  cfg.pparams.depth = get_size(kv, "depth");
  cfg.pparams.epsilon = get_double(kv, "epsilon");
  cfg.sparams.k_init_fraction = get_double(kv, "k_init_fraction");
  cfg.sparams.beta_init = get_double(kv, "beta_init");
  cfg.sparams.cooling_fraction = get_double(kv, "cooling_fraction");
  cfg.sparams.max_iters = get_size(kv, "max_iters");
  if (kv.at("acceptance_form") == "exp") {
    cfg.sparams.acceptance_form = AcceptanceForm::Metropolis;
  } else if (kv.at("acceptance_form") == "one_minus_exp") {
    cfg.sparams.acceptance_form = AcceptanceForm::Complement;
  } else {
    throw ConfigError("config: acceptance_form must be exp or one_minus_exp");
  }

  cfg.knn_k = get_size(kv, "knn_k");
  cfg.n_actuators = get_size(kv, "n_actuators");
  cfg.n_items = get_size(kv, "n_items");
  cfg.n_recommend = get_size(kv, "n_recommend");
  cfg.maze_layout = kv.at("maze_layout");
  cfg.catalog = kv.at("catalog");
  cfg.output_dir = kv.at("output_dir");
  cfg.threads = static_cast<int>(get_size(kv, "threads"));
  cfg.heatmap = get_bool(kv, "heatmap");

  try {
    cfg.train.validate();
    cfg.sparams.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  cfg.resolved = std::move(kv);
  return cfg;
}

std::unique_ptr<EnvContract> build_environment(const ExperimentConfig& cfg) {
  if (cfg.environment == "maze") {
    MazeConfig mc = default_maze_config(cfg.n_actuators);
    if (!cfg.maze_layout.empty()) load_maze_layout(cfg.maze_layout, mc);
    return std::make_unique<MazeEnv>(mc);
  }
  if (cfg.environment == "inventory") {
    return std::make_unique<InventoryEnv>(default_inventory_config(cfg.n_items));
  }
  CatalogEnvConfig rc;
  if (cfg.catalog.rfind("synthetic:", 0) == 0) {
    std::stringstream ss(cfg.catalog.substr(10));
    std::string tok;
    std::vector<std::uint64_t> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stoull(tok));
    if (parts.size() != 3) {
      throw ConfigError("config: catalog must be a path or synthetic:<rows>:<features>:<seed>");
    }
    rc.catalog = synthetic_catalog(parts[2], parts[0], parts[1]);
  } else {
    rc.catalog = load_catalog_csv(cfg.catalog);
  }
  rc.n_recommend = cfg.n_recommend;
  return std::make_unique<RecommenderEnv>(std::move(rc));
}

std::unique_ptr<Mapper> build_mapper(const ExperimentConfig& cfg,
                                     const ActionSpaceSpec& spec) {
  if (cfg.method == "dnc") {
    return std::make_unique<DncMapper>(spec, cfg.pparams, cfg.sparams);
  }
  if (cfg.method == "minmax") {
    return std::make_unique<MinMaxMapper>(spec);
  }
  if (cfg.method == "knn") {
    return std::make_unique<KnnMapper>(spec, cfg.knn_k, cfg.train.enumeration_limit);
  }
  return nullptr;  // vac
}

std::string resolve_output_dir(const std::string& dir) {
  const char* root = std::getenv("DNCBENCH_OUTPUT_ROOT");
  if (root && root[0] != '\0' && !fs::path(dir).is_absolute()) {
    return (fs::path(root) / dir).string();
  }
  return dir;
}

namespace {

void write_snapshot(const KeyValues& kv, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write " + path);
  for (const auto& [key, value] : kv) {
    std::fprintf(f, "%s = %s\n", key.c_str(), value.c_str());
  }
  std::fclose(f);
}

}  // namespace

RunStatus run_experiment(const ExperimentConfig& cfg, std::string* message) {
  const std::string out_dir = resolve_output_dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    if (message) *message = "cannot create output dir " + out_dir;
    return RunStatus::BadConfig;
  }

  parallel::set_thread_count(cfg.threads);

  std::unique_ptr<EnvContract> env;
  std::unique_ptr<Mapper> mapper;
  try {
    env = build_environment(cfg);
    mapper = build_mapper(cfg, env->action_spec());
    if (cfg.method == "vac") {
      // Fail fast with the same signal vac_train_run would give.
      const double card = env->action_spec().cardinality();
      if (!(card <= static_cast<double>(cfg.train.enumeration_limit))) {
        throw CardinalityExceeded("action space holds " + std::to_string(card) +
                                  " actions, limit " +
                                  std::to_string(cfg.train.enumeration_limit));
      }
    }
  } catch (const CardinalityExceeded& e) {
    if (message) *message = std::string("skipped: ") + e.what();
    return RunStatus::Infeasible;
  } catch (const ConfigError& e) {
    if (message) *message = e.what();
    return RunStatus::BadConfig;
  }

  write_snapshot(cfg.resolved, (fs::path(out_dir) / "config.snapshot").string());

  const std::size_t n_seeds = cfg.seeds.size();
  std::vector<SeedMetrics> per_seed(n_seeds);
  std::vector<VisitGrid> grids(cfg.heatmap ? n_seeds : 0);
  std::vector<std::string> errors(n_seeds);

#pragma omp parallel for schedule(dynamic) num_threads(cfg.threads) if (cfg.threads > 1)
  for (long i = 0; i < static_cast<long>(n_seeds); ++i) {
    const std::uint64_t seed = cfg.seeds[static_cast<std::size_t>(i)];
    try {
      TrainHooks hooks;
      if (cfg.heatmap) {
        VisitGrid* grid = &grids[static_cast<std::size_t>(i)];
        hooks.on_step = [grid](const StepAudit& a) {
          grid->add(a.next_state[0], a.next_state[1]);
        };
      }
      const TrainResult result = cfg.method == "vac"
                                     ? vac_train_run(*env, cfg.train, seed, hooks)
                                     : train_run(*env, *mapper, cfg.train, seed, hooks);
      SeedMetrics m = metrics_from_result(seed, result);
      write_metrics_csv(m, (fs::path(out_dir) / ("metrics_seed" + std::to_string(seed) +
                                                 ".csv")).string());
      per_seed[static_cast<std::size_t>(i)] = std::move(m);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] =
          "seed " + std::to_string(seed) + ": " + e.what();
    }
  }
  for (const std::string& err : errors) {
    if (!err.empty()) throw std::runtime_error("run_experiment: " + err);
  }

  write_summary_csv(summarize(per_seed), (fs::path(out_dir) / "summary.csv").string());
  write_timing_csv(per_seed, (fs::path(out_dir) / "timing.csv").string());

  if (cfg.heatmap) {
    VisitGrid merged;
    for (const VisitGrid& g : grids) merged.merge(g);
    export_heatmap(merged, (fs::path(out_dir) / "heatmap.csv").string(),
                   (fs::path(out_dir) / "heatmap.pgm").string());
  }
  if (message) *message = "wrote " + std::to_string(n_seeds) + " seed runs to " + out_dir;
  return RunStatus::Ok;
}

RunStatus summarize_dir(const std::string& dir, std::string* message) {
  const std::string resolved = resolve_output_dir(dir);
  std::vector<SeedMetrics> per_seed;
  if (!fs::is_directory(resolved)) {
    if (message) *message = "not a directory: " + resolved;
    return RunStatus::BadConfig;
  }
  for (const auto& entry : fs::directory_iterator(resolved)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("metrics_seed", 0) == 0 && entry.path().extension() == ".csv") {
      per_seed.push_back(read_metrics_csv(entry.path().string()));
    }
  }
  if (per_seed.empty()) {
    if (message) *message = "no metrics_seed*.csv files in " + resolved;
    return RunStatus::BadConfig;
  }
  write_summary_csv(summarize(per_seed), (fs::path(resolved) / "summary.csv").string());
  if (message) {
    *message = "summarized " + std::to_string(per_seed.size()) + " seeds in " + resolved;
  }
  return RunStatus::Ok;
}

}  // namespace dnc
