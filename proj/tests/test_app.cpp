#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qsr/app.hpp"
#include "qsr/complexity.hpp"
#include "qsr/fourier.hpp"

using namespace qsr::app;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "qsr_app_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.problem = "deuteron-2";
  c.algorithm = "vqe";
  c.mode = "shots";
  c.shots = 2048;
  c.seed = 9;
  c.bandwidths = std::vector<int>{1, 1};
  c.theta0 = {0.1, 0.2};
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_json(json{{"problm", "deuteron-1"}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"shots", "many"}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"mode", "noisy"}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"algorithm", "qaoa"}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"shots", 0}}), ConfigError);
  EXPECT_THROW(config_from_json(json::array()), ConfigError);
  EXPECT_NO_THROW(config_from_json(json::object()));
}

TEST(RunConfig, LoadFromFile) {
  const auto path = scratch_dir() / "cfg.json";
  std::ofstream(path) << R"({"problem": "deuteron-2", "mode": "shots", "seed": 3})";
  const auto c = load_config(path.string());
  EXPECT_EQ(c.problem, "deuteron-2");
  EXPECT_EQ(c.seed, 3u);
  std::ofstream(path) << "{broken";
  EXPECT_THROW(load_config(path.string()), ConfigError);
  EXPECT_THROW(load_config((scratch_dir() / "missing.json").string()), ConfigError);
}

TEST(CmdRun, QsrExactDeuteron1) {
  RunConfig c;
  c.model_out = (scratch_dir() / "d1-model.json").string();
  c.out = (scratch_dir() / "d1-result.json").string();
  const auto r = cmd_run(c);
  EXPECT_EQ(r["ledger"]["samples"], 3);
  EXPECT_EQ(r["ledger"]["queries"], 1);
  EXPECT_LE(r["error_abs"].get<double>(), 1e-8);
  const auto model = qsr::load_model(r["model_path"].get<std::string>());
  EXPECT_EQ(model.bandwidths(), std::vector<int>{1});
  std::ifstream in(c.out);
  EXPECT_EQ(json::parse(in), r);
}

TEST(CmdRun, QsrShotsDeuteron2UsesTwentyFiveSamples) {
  RunConfig c;
  c.problem = "deuteron-2";
  c.mode = "shots";
  c.model_out = (scratch_dir() / "d2-model.json").string();
  const auto r = cmd_run(c);
  EXPECT_EQ(r["ledger"]["samples"], 25);
  EXPECT_EQ(r["ledger"]["queries"], 1);
  EXPECT_EQ(r["bandwidths"], json({2, 2}));
}

TEST(CmdRun, VqeShotsReproducible) {
  RunConfig c;
  c.algorithm = "vqe";
  c.mode = "shots";
  c.seed = 7;
  const auto a = cmd_run(c);
  const auto b = cmd_run(c);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["ledger"]["samples"], a["ledger"]["queries"]);
  EXPECT_FALSE(a.contains("model_path"));
}

TEST(CmdRun, DefaultModelPathUsesOutputDirEnv) {
  const auto dir = scratch_dir() / "env_out";
  std::filesystem::remove_all(dir);
  ::setenv(kOutputDirEnv, dir.c_str(), 1);
  const auto r = cmd_run(RunConfig{});
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(r["model_path"], (dir / "deuteron-1-model.json").string());
  EXPECT_TRUE(std::filesystem::exists(dir / "deuteron-1-model.json"));
}

TEST(CmdRun, ConfigErrors) {
  RunConfig c;
  c.problem = "helium";
  EXPECT_THROW(cmd_run(c), ConfigError);
  c = RunConfig{};
  c.bandwidths = std::vector<int>{1, 1};
  EXPECT_THROW(cmd_run(c), ConfigError);
  c = RunConfig{};
  c.algorithm = "vqe";
  c.theta0 = {0.0, 0.0};
  EXPECT_THROW(cmd_run(c), ConfigError);
}

TEST(ErrorPercent, Definition) {
  EXPECT_DOUBLE_EQ(error_percent(-1.98, -2.0), 1.0);
  EXPECT_DOUBLE_EQ(error_percent(-2.02, -2.0), 1.0);
}

TEST(Table1, ExactMode) {
  const auto t = cmd_table1(0, 10000, true);
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& row : t.rows) {
    EXPECT_LT(row.error_percent, 1e-6) << row.n << row.algorithm;
    if (row.algorithm == "QSR") {
      EXPECT_EQ(row.samples, row.n == 1 ? 3u : 25u);
      EXPECT_EQ(row.queries, 1u);
    } else {
      EXPECT_EQ(row.samples, row.queries);
    }
  }
  const auto csv = lines(table1_csv(t));
  ASSERT_EQ(csv.size(), 5u);
  EXPECT_EQ(csv[0], "n,Algorithm,Samples,Queries,Error%");
  EXPECT_EQ(table1_json(t)["rows"].size(), 4u);
  EXPECT_NE(table1_text(t).find("QSR"), std::string::npos);
}

TEST(Table1, ShotsModeQsrRowsAndDeterminism) {
  const auto a = cmd_table1(3, 10000);
  const auto b = cmd_table1(3, 10000);
  EXPECT_EQ(table1_json(a), table1_json(b));
  EXPECT_EQ(a.rows[1].samples, 3u);
  EXPECT_EQ(a.rows[3].samples, 25u);
  EXPECT_GT(a.fit_p, 0.0);
}

TEST(Complexity, ThresholdReport) {
  const auto r = complexity_threshold(2, 4);
  EXPECT_TRUE(r["advantage"].get<bool>());
  EXPECT_EQ(r["a"].get<int>(),
            qsr::complexity::advantage_threshold(qsr::complexity::ComplexityParams::from_ratio(2, 2, 4)));
  EXPECT_NEAR(r["n_star"].get<double>(), 4 / std::log(2.0), 1e-12);
  const auto sub = complexity_threshold(0.1, 1);
  EXPECT_FALSE(sub["advantage"].get<bool>());
  EXPECT_FALSE(sub.contains("a"));
  EXPECT_THROW(complexity_threshold(-1, 1), ConfigError);
}

TEST(Complexity, EfficiencyReport) {
  const auto r = complexity_efficiency(2, 2, 1);
  EXPECT_NEAR(r["E"].get<double>() / r["E_integral"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(r["a"], 8);
}

TEST(Complexity, SweepCsv) {
  const auto csv = complexity_sweep_csv("efficiency", parse_range("2:20:10"),
                                        parse_range("2:5:7"), 2.0);
  const auto l = lines(csv);
  ASSERT_EQ(l.size(), 11u);
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::stringstream ss(l[i]);
    for (std::string cell; std::getline(ss, cell, ',');) {
      EXPECT_TRUE(std::isfinite(std::stod(cell)));
    }
  }
  EXPECT_THROW(parse_range("1:2"), ConfigError);
  EXPECT_THROW(parse_range("3:2:4"), ConfigError);
  EXPECT_THROW(complexity_sweep_csv("volume", parse_range("1:2:2"), parse_range("1:2:2"), 2),
               ConfigError);
}

TEST(Landscape, ExactShapeAndAgreement) {
  const auto l = lines(cmd_landscape("deuteron-2", 41, "exact", 10000, 0));
  ASSERT_EQ(l.size(), 1682u);
  EXPECT_EQ(l[0], "theta,eta,raw,model");
  double worst = 0;
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::stringstream ss(l[i]);
    std::vector<double> v;
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 4u);
    worst = std::max(worst, std::abs(v[2] - v[3]));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Landscape, ShotsNoiseBounded) {
  // Raw and model each carry under 0.07 of shot noise per point.
  const auto l = lines(cmd_landscape("deuteron-1", 41, "shots", 10000, 4));
  ASSERT_EQ(l.size(), 42u);
  EXPECT_EQ(l[0], "theta,raw,model");
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::stringstream ss(l[i]);
    std::vector<double> v;
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    EXPECT_LT(std::abs(v[1] - v[2]), 0.6);
  }
}

TEST(Landscape, Errors) {
  EXPECT_THROW(cmd_landscape("deuteron-2", 1, "exact", 1, 0), ConfigError);
  EXPECT_THROW(cmd_landscape("deuteron-2", 10, "loud", 1, 0), ConfigError);
}

TEST(VerifyBandwidthCommand, Reports) {
  const auto ok = cmd_verify_bandwidth("deuteron-2", 32, 1e-8);
  EXPECT_TRUE(ok["pass"].get<bool>());
  const auto bad = cmd_verify_bandwidth("deuteron-2", 32, 1e-8, std::vector<int>{1, 1});
  EXPECT_FALSE(bad["pass"].get<bool>());
  EXPECT_EQ(bad["failing_axes"], json({1}));
  EXPECT_THROW(cmd_verify_bandwidth("deuteron-2", 3, 1e-8), ConfigError);
}
