#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "framelab/error.hpp"
#include "framelab/experiments.hpp"
#include "framelab/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

unsigned threads_from_env() {
  const char* env = std::getenv("FRAMELAB_THREADS");
  if (!env || !*env) return 1;
  try {
    const long v = std::stol(env);
    return v > 0 ? static_cast<unsigned>(v) : 1u;
  } catch (const std::exception&) {
    throw framelab::ConfigError(std::string("FRAMELAB_THREADS is not a positive integer: '") + env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier frame experiments on discretized measures"};
  std::string experiment, config_path, out_dir;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  bool print_defaults = false;

  std::string ids;
  for (const auto& id : framelab::experiment_ids()) ids += "\n  " + id;
  app.add_option("experiment", experiment, "Experiment id:" + ids)->required();
  auto* cfg_opt = app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "Output directory (default: out/<experiment>)");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads (falls back to FRAMELAB_THREADS, then 1)")
                          ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_flag("--print-defaults", print_defaults, "Print the default config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (print_defaults) {
      std::cout << framelab::default_config(experiment).dump(2) << '\n';
      return 0;
    }
    if (cfg_opt->count() == 0) throw framelab::ConfigError("--config is required");
    std::ifstream in(config_path);
    if (!in) throw framelab::ConfigError("cannot open config file '" + config_path + "'");
    nlohmann::json user;
    try {
      user = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw framelab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    framelab::set_threads(threads_opt->count() ? threads : threads_from_env());
    const auto resolved = framelab::resolve_config(
        experiment, user, seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
    if (out_dir.empty()) out_dir = "out/" + experiment;
    const auto res = framelab::run_experiment(experiment, resolved, out_dir);
    std::cout << experiment << " config_hash=" << res.config_hash << " -> " << out_dir << '\n';
    for (const auto& f : res.files) std::cout << "  " << f << '\n';
    if (res.status != 0) std::cerr << "numeric failure: see result.json\n";
    return res.status;
  } catch (const framelab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const framelab::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const framelab::DimensionMismatch& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}
