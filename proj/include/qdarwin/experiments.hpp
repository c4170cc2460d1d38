#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qdarwin/infotheory.hpp"
#include "qdarwin/models.hpp"

namespace qdarwin {

struct SweepConfig {
  std::vector<int> m_list;           // plateau, discord-scan (empty = 1..N)
  std::vector<int> n_env_list;       // cluster
  std::vector<double> gamma_list;    // theorem
  int seeds = 1;                     // trials per grid point (haar mode)
  std::vector<double> radius_grid;   // cluster, fractions of pi in [0, 0.5]
  double window = 0.1;               // cluster point dump, |b_x|,|b_y| bound
  int count = 100;                   // props: number of constructed states
  double epsilon = 1e-3;             // props: perturbation amplitude
};

struct ExperimentConfig {
  std::string experiment;  // plateau | cluster | discord-scan | props | theorem | state-dump
  CMaybeSpec model;
  SweepConfig sweep;
  std::string output_dir = "out";
  double tol_structure = 1e-10;
  double tol_perturbation = 1e-6;
  DiscordOptions discord;
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  static ExperimentConfig from_json_file(const std::filesystem::path& path);
  static ExperimentConfig from_json_text(const std::string& text);
  void validate() const;
};

struct ExperimentResult {
  // logical name ("plateau", "cluster_cdf", ...) -> written file path
  std::map<std::string, std::filesystem::path> files;
};

ExperimentResult run_plateau(const ExperimentConfig& config);
ExperimentResult run_cluster(const ExperimentConfig& config);
ExperimentResult run_discord_scan(const ExperimentConfig& config);
ExperimentResult run_props(const ExperimentConfig& config);
ExperimentResult run_theorem(const ExperimentConfig& config);
ExperimentResult run_state_dump(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

// Shortest round-trip decimal, matching the pinned CSV dialect.
std::string format_double(double value);

// Spearman rank correlation with average ranks on ties; returns 0 when
// either series is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// Index-parallel loop; results must be written to pre-sized slots so the
// output is independent of scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qdarwin
