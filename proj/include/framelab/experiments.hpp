#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace framelab {

inline constexpr int kConfigSchemaVersion = 1;

/// Library version string baked in at build time.
std::string library_version();

std::vector<std::string> experiment_ids();

/// Full default configuration of an experiment, including schema_version,
/// experiment and seed keys.
nlohmann::ordered_json default_config(const std::string& id);

/// Defaults overlaid with `user`. Unknown keys, wrong value types, a wrong
/// schema_version or a mismatched experiment id raise ConfigError naming the
/// offending keys. `seed` replaces the seed key when given.
nlohmann::ordered_json resolve_config(const std::string& id, const nlohmann::json& user,
                                      std::optional<std::uint64_t> seed = std::nullopt);

/// SHA-256 of the compact dump of a resolved config.
std::string config_hash(const nlohmann::ordered_json& resolved);

struct RunResult {
  /// 0 on success, 3 when a numeric step did not converge or found no witness.
  int status = 0;
  std::string config_hash;
  std::vector<std::string> files;
  nlohmann::ordered_json summary;
};

/// Runs one experiment with a resolved config and writes result.json, any
/// CSV tables and manifest.json into `out_dir` (created if missing).
RunResult run_experiment(const std::string& id, const nlohmann::ordered_json& resolved,
                         const std::filesystem::path& out_dir);

}  // namespace framelab
