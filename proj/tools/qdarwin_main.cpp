#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "qdarwin/experiments.hpp"

namespace {

int g_log_level = 2;  // 0 error, 1 warn, 2 info, 3 debug

void log_info(const std::string& msg) {
  if (g_log_level >= 2) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

int parse_log_level(const std::string& s) {
  if (s == "error") return 0;
  if (s == "warn") return 1;
  if (s == "info") return 2;
  if (s == "debug") return 3;
  throw CLI::ValidationError("--log-level", "expected error|warn|info|debug");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdarwin: quantum Darwinism branching-structure experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string log_level = "info";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;

  const std::vector<std::string> experiments{"plateau",     "cluster", "discord-scan",
                                             "props",       "theorem", "state-dump"};
  for (const auto& name : experiments) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--seed", seed, "override the config base seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });
    sub->add_option("--out", out_dir, "override the config output directory");
    sub->add_option("--threads", threads, "worker threads (0 = auto)");
    sub->add_option("--log-level", log_level, "error|warn|info|debug");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    g_log_level = parse_log_level(log_level);
    auto config = qdarwin::ExperimentConfig::from_json_file(config_path);
    const std::string chosen = app.get_subcommands().front()->get_name();
    if (!config.experiment.empty() && config.experiment != chosen) {
      throw std::invalid_argument("config: experiment '" + config.experiment +
                                  "' does not match subcommand '" + chosen + "'");
    }
    config.experiment = chosen;
    if (seed_set) config.base_seed = seed;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (threads >= 0) config.threads = threads;

    log_info("running " + chosen + " -> " + config.output_dir);
    auto result = qdarwin::run_experiment(config);
    for (const auto& [name, path] : result.files) {
      log_info(name + ": " + path.string());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
