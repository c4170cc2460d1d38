#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdarwin/experiments.hpp"

using namespace qdarwin;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig config_from(const std::string& text) {
  return ExperimentConfig::from_json_text(text);
}

}  // namespace

TEST_CASE("config parsing: fields, defaults, and per-path errors") {
  auto cfg = config_from(R"({
    "experiment": "plateau",
    "model": {"type": "gamma", "p": 0.3, "gamma": 0.9, "n_env": 12, "m": 3, "seed": 5},
    "sweep": {"m": [1, 2, 3], "seeds": 4},
    "discord": {"mode": "pointer", "theta_nodes": 32},
    "output": {"dir": "somewhere"},
    "tolerances": {"structure": 1e-9},
    "seed": 99,
    "threads": 2
  })");
  CHECK(cfg.experiment == "plateau");
  CHECK(cfg.model.mode == CMaybeSpec::Mode::Gamma);
  CHECK(cfg.model.p == doctest::Approx(0.3));
  CHECK(cfg.model.seed == 5);
  CHECK(cfg.sweep.m_list == std::vector<int>{1, 2, 3});
  CHECK(cfg.discord.mode == DiscordOptions::Mode::PointerInduced);
  CHECK(cfg.discord.theta_nodes == 32);
  CHECK(cfg.output_dir == "somewhere");
  CHECK(cfg.tol_structure == doctest::Approx(1e-9));
  CHECK(cfg.base_seed == 99);
  CHECK(cfg.threads == 2);
  CHECK(cfg.sweep.radius_grid.size() == 51);  // default 0..0.5 step 0.01

  CHECK_THROWS_WITH_AS(config_from(R"({"experiment": "nope"})"),
                       doctest::Contains("experiment"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from(R"({"model": {"type": "wat"}})"),
                       doctest::Contains("model.type"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from(R"({"sweep": {"radius_grid": [0.7]}})"),
                       doctest::Contains("radius_grid"), std::invalid_argument);
  CHECK_THROWS_AS(config_from("{not json"), std::invalid_argument);
}

TEST_CASE("shortest round-trip float formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(2.0 / 3.0) == "0.6666666666666666");
  CHECK(format_double(1e-21) == "1e-21");
  const double v = 0.12345678901234567;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("spearman rank correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {5, 5, 5, 5}) == doctest::Approx(0.0));  // degenerate
  // monotone in rank though not in value
  CHECK(spearman({1, 10, 100, 1000}, {0.1, 0.2, 0.3, 4000.0}) == doctest::Approx(1.0));
}

TEST_CASE("plateau: exact c-not model pins the plateau and the 2H_S endpoint") {
  auto cfg = config_from(R"({
    "experiment": "plateau",
    "model": {"type": "ideal", "p": 0.5, "n_env": 6, "m": 1},
    "discord": {"mode": "pointer"},
    "output": {"dir": "test_out/plateau_ideal"}
  })");
  auto result = run_plateau(cfg);
  auto rows = parse_csv(slurp(result.files.at("plateau")));
  REQUIRE(rows.size() == 7);  // header + m = 1..6
  CHECK(rows[0] == std::vector<std::string>{"seed", "n_env", "m", "mutual_information",
                                            "system_entropy", "ratio", "discord_upper"});
  for (std::size_t r = 1; r <= 5; ++r) {
    CHECK(std::stod(rows[r][5]) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(std::stod(rows[6][5]) == doctest::Approx(2.0).epsilon(1e-8));

  // p=0 degenerate model: every mutual information is zero
  auto zero_cfg = config_from(R"({
    "experiment": "plateau",
    "model": {"type": "gamma", "p": 0.0, "gamma": 0.7, "n_env": 4, "m": 1},
    "discord": {"mode": "pointer"},
    "output": {"dir": "test_out/plateau_zero"}
  })");
  auto zrows = parse_csv(slurp(run_plateau(zero_cfg).files.at("plateau")));
  for (std::size_t r = 1; r < zrows.size(); ++r) {
    CHECK(std::stod(zrows[r][3]) == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("cluster output: schema, saturation at radius 0.5, determinism") {
  const std::string text = R"({
    "experiment": "cluster",
    "model": {"type": "haar", "p": 0.3, "n_env": 6, "m": 1},
    "sweep": {"n_env": [4, 6], "seeds": 2, "radius_grid": {"from": 0.0, "to": 0.5, "step": 0.1}},
    "output": {"dir": "test_out/clusterA"},
    "seed": 17,
    "threads": 2
  })";
  auto result = run_cluster(config_from(text));
  const std::string cdf_a = slurp(result.files.at("cluster_cdf"));
  auto rows = parse_csv(cdf_a);
  REQUIRE(rows.size() == 1 + 2 * 2 * 6);
  CHECK(rows[0] == std::vector<std::string>{"seed", "n_env", "radius", "cap_mass_0",
                                            "cap_mass_1"});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r][2] == "0.5") {
      CHECK(std::stod(rows[r][3]) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::stod(rows[r][4]) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  // identical config + seed => byte-identical output, regardless of threads
  std::string other = text;
  other.replace(other.find("clusterA"), 8, "clusterB");
  other.replace(other.find("\"threads\": 2"), 12, "\"threads\": 4");
  auto result_b = run_cluster(config_from(other));
  CHECK(slurp(result_b.files.at("cluster_cdf")) == cdf_a);
  CHECK(slurp(result_b.files.at("cluster_points")) ==
        slurp(result.files.at("cluster_points")));
}

TEST_CASE("golden regression on the pinned small plateau config") {
  auto cfg = ExperimentConfig::from_json_file(fs::path(QDARWIN_SOURCE_DIR) / "configs" /
                                              "plateau_small.json");
  cfg.output_dir = "test_out/plateau_golden";
  auto result = run_plateau(cfg);
  auto got = parse_csv(slurp(result.files.at("plateau")));
  auto want = parse_csv(slurp(fs::path(QDARWIN_SOURCE_DIR) / "tests" / "golden" /
                              "plateau_small.csv"));
  REQUIRE(got.size() == want.size());
  CHECK(got[0] == want[0]);  // schema is pinned exactly
  for (std::size_t r = 1; r < want.size(); ++r) {
    REQUIRE(got[r].size() == want[r].size());
    for (std::size_t c = 0; c < want[r].size(); ++c) {
      CHECK(std::stod(got[r][c]) == doctest::Approx(std::stod(want[r][c])).epsilon(1e-12));
    }
  }
}

TEST_CASE("props report: constructed states pass, perturbed states fail") {
  auto cfg = config_from(R"({
    "experiment": "props",
    "sweep": {"count": 6, "epsilon": 1e-3},
    "output": {"dir": "test_out/props"},
    "seed": 3,
    "threads": 2
  })");
  auto result = run_props(cfg);
  auto doc = nlohmann::json::parse(slurp(result.files.at("props")));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 6);
  for (const auto& entry : doc) {
    CHECK(entry.at("constructed").at("all_passed").get<bool>());
    CHECK(entry.at("constructed").at("discord_upper").get<double>() < 1e-6);
    CHECK(entry.at("constructed").at("rebuilt_overlap").get<double>() >= 1.0 - 1e-10);
    CHECK_FALSE(entry.at("perturbed").at("all_passed").get<bool>());
    const double cross = entry.at("perturbed").at("max_cross_product").get<double>();
    CHECK(cross >= 1e-7);
    CHECK(cross <= 1e-5);
  }
}

TEST_CASE("theorem run: schema, gamma=1 row, summary correlation") {
  auto cfg = config_from(R"({
    "experiment": "theorem",
    "model": {"type": "gamma", "p": 0.3, "n_env": 8, "m": 4},
    "sweep": {"gamma": [1.0, 0.9, 0.7]},
    "output": {"dir": "test_out/theorem"},
    "threads": 2
  })");
  auto result = run_theorem(cfg);
  auto rows = parse_csv(slurp(result.files.at("theorem")));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"seed", "n_env", "m", "gamma", "eps_D", "eps_I",
                                            "fidelity", "eta", "branch_entropy_sum",
                                            "decoherence_flag"});
  CHECK(std::stod(rows[1][7]) < 1e-10);       // gamma = 1 -> eta ~ 0
  CHECK(std::stod(rows[2][7]) < std::stod(rows[3][7]));  // eta grows as gamma drops

  auto summary = parse_csv(slurp(result.files.at("theorem_summary")));
  REQUIRE(summary.size() == 2);
  CHECK(summary[0] == std::vector<std::string>{"records", "good_records", "spearman_eps_eta"});
  const double rho = std::stod(summary[1][2]);
  CHECK(rho >= -1.0);
  CHECK(rho <= 1.0);
}

TEST_CASE("state dump: amplitude array in little-endian index order") {
  auto cfg = config_from(R"({
    "experiment": "state-dump",
    "model": {"type": "gamma", "p": 0.5, "gamma": 0.5, "n_env": 1, "m": 1},
    "output": {"dir": "test_out/dump"}
  })");
  auto result = run_state_dump(cfg);
  auto doc = nlohmann::json::parse(slurp(result.files.at("state")));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 4);
  CHECK(doc[0][0].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(doc[1][0].get<double>() == doctest::Approx(0.0));
  CHECK(doc[2][0].get<double>() == doctest::Approx(0.5));
  CHECK(doc[3][0].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("every configured grid point lands in the output") {
  auto cfg = config_from(R"({
    "experiment": "discord-scan",
    "model": {"type": "gamma", "p": 0.3, "gamma": 0.8, "n_env": 4, "m": 1},
    "sweep": {"m": [1, 2, 3, 4]},
    "output": {"dir": "test_out/scan"}
  })");
  auto rows = parse_csv(slurp(run_discord_scan(cfg).files.at("discord_scan")));
  REQUIRE(rows.size() == 5);
  for (int m = 1; m <= 4; ++m) {
    CHECK(rows[m][2] == std::to_string(m));
    CHECK(std::stod(rows[m][6]) >= -1e-9);  // discord_upper nonnegative
  }
  CHECK(rows[1][7] == "exhaustive-grid");
  CHECK(rows[4][7] == "pointer-induced");
}
