#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rwc/rwc.hpp"

namespace rwc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class InputMode { files, synthetic };

struct ExperimentConfig {
  InputMode mode = InputMode::synthetic;

  // files mode
  std::filesystem::path edges;
  std::filesystem::path partition;
  std::filesystem::path pool;

  // synthetic mode; seeds are derived from `seed`, never read from config
  PolarizedGraphParams graph{};
  CandidatePoolParams pool_params{};

  WalkConfig walk{};
  bool exact = false;

  std::size_t k = 30;
  double candidate_multiplier = 3.0;

  std::vector<double> fractions = default_fractions();
  std::size_t trials = 5;
  std::vector<Strategy> strategies = all_strategies();

  std::filesystem::path out = "rwc_out";
  std::uint64_t seed = 20240601;

  /// Per-stage seeds: derive_seed(seed, stage name).
  void resolve_seeds();
  void validate() const;
};

/// Parses the nested JSON configuration document. Unknown keys are errors.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

struct StageTime {
  std::string name;
  double seconds = 0.0;
};

struct FileHash {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<StageTime> stages;
  std::vector<FileHash> inputs;
  std::vector<FileHash> outputs;
};

std::string sha256_file(const std::filesystem::path& path);
nlohmann::ordered_json manifest_to_json(const RunManifest& manifest);

/// Subcommand bodies. Each returns the process exit code: 0 success, 2
/// configuration or input error, 3 estimation failure.
int cmd_rwc(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_select(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_generate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rwc::cli
