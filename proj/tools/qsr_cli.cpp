#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsr/app.hpp"

using nlohmann::json;
namespace app = qsr::app;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw app::ConfigError("bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw app::ConfigError("empty integer list");
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const auto parent = std::filesystem::path(out).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit", code}}.dump()
            << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Quantum sample regression and VQE on the deuteron benchmark"};
  cli.require_subcommand(1);

  // Shared flags.
  std::string problem = "deuteron-1";
  std::string mode = "exact";
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::string out;
  std::string data_dir;

  auto* run = cli.add_subcommand("run", "Run VQE or QSR on one problem");
  app::RunConfig config;
  std::string config_path;
  std::string bandwidths;
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--problem", config.problem);
  run->add_option("--algorithm", config.algorithm, "vqe | qsr");
  run->add_option("--mode", config.mode, "exact | shots");
  run->add_option("--shots", config.shots, "Shots per Pauli term");
  run->add_option("--seed", config.seed);
  run->add_option("--bandwidths", bandwidths, "Comma separated override, e.g. 1,1");
  run->add_option("--oversample", config.oversample);
  run->add_option("--max-evals", config.max_evals, "VQE evaluation budget");
  run->add_option("--out", config.out, "Result JSON path");
  run->add_option("--model-out", config.model_out, "Fourier model JSON path");
  run->add_option("--data-dir", config.data_dir);

  auto* table1 = cli.add_subcommand("table1", "VQE vs QSR comparison table");
  bool table_exact = false;
  std::string table_format = "text";
  table1->add_option("--seed", seed);
  table1->add_option("--shots", shots);
  table1->add_flag("--exact", table_exact, "Noiseless evaluations");
  table1->add_option("--format", table_format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  table1->add_option("--out", out);
  table1->add_option("--data-dir", data_dir);

  auto* complexity = cli.add_subcommand("complexity", "Low-qubit cost model");
  complexity->require_subcommand(1);
  double m = 2.0, r = 4.0, p = 2.0, s = 1.0;
  auto* threshold = complexity->add_subcommand("threshold", "Crossovers and a");
  threshold->add_option("-m,--m", m);
  threshold->add_option("-r,--r", r);
  threshold->add_option("-p,--p", p);
  auto* efficiency = complexity->add_subcommand("efficiency", "Efficiency E");
  efficiency->add_option("-m,--m", m);
  efficiency->add_option("-p,--p", p);
  efficiency->add_option("-s,--s", s);
  auto* sweep = complexity->add_subcommand("sweep", "CSV grid");
  std::string kind = "efficiency";
  std::string rows_text = "2:20:19", cols_text = "2:5:13";
  double fixed = 2.0;
  sweep->add_option("--kind", kind, "threshold (m x r) | efficiency (p x s)")
      ->check(CLI::IsMember({"threshold", "efficiency"}));
  sweep->add_option("--rows", rows_text, "lo:hi:count");
  sweep->add_option("--cols", cols_text, "lo:hi:count");
  sweep->add_option("--fixed", fixed, "p for threshold, m for efficiency");
  sweep->add_option("--out", out);

  auto* landscape = cli.add_subcommand("landscape", "Raw vs model landscape CSV");
  int resolution = 41;
  landscape->add_option("--problem", problem);
  landscape->add_option("--resolution", resolution);
  landscape->add_option("--mode", mode);
  landscape->add_option("--shots", shots);
  landscape->add_option("--seed", seed);
  landscape->add_option("--out", out);
  landscape->add_option("--data-dir", data_dir);

  auto* verify = cli.add_subcommand("verify-bandwidth",
                                    "Check declared bandwidths numerically");
  int grid = 16;
  double tol = 1e-8;
  verify->add_option("--problem", problem);
  verify->add_option("--grid", grid);
  verify->add_option("--tol", tol);
  verify->add_option("--bandwidths", bandwidths);
  verify->add_option("--data-dir", data_dir);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (*run) {
      if (!config_path.empty()) {
        app::RunConfig file = app::load_config(config_path);
        // Command-line flags override the file.
        for (const auto* opt : run->get_options()) {
          if (opt->count() == 0) continue;
          const auto& name = opt->get_name();
          if (name == "--problem") file.problem = config.problem;
          if (name == "--algorithm") file.algorithm = config.algorithm;
          if (name == "--mode") file.mode = config.mode;
          if (name == "--shots") file.shots = config.shots;
          if (name == "--seed") file.seed = config.seed;
          if (name == "--oversample") file.oversample = config.oversample;
          if (name == "--max-evals") file.max_evals = config.max_evals;
          if (name == "--out") file.out = config.out;
          if (name == "--model-out") file.model_out = config.model_out;
          if (name == "--data-dir") file.data_dir = config.data_dir;
        }
        config = file;
      }
      if (!bandwidths.empty()) config.bandwidths = parse_int_list(bandwidths);
      std::cout << app::cmd_run(config).dump(2) << "\n";
    } else if (*table1) {
      const auto t = app::cmd_table1(seed, shots, table_exact, data_dir);
      std::string text;
      if (table_format == "csv") {
        text = app::table1_csv(t);
      } else if (table_format == "json") {
        text = app::table1_json(t).dump(2) + "\n";
      } else {
        text = app::table1_text(t);
      }
      emit(text, out);
    } else if (*complexity) {
      if (*threshold) {
        std::cout << app::complexity_threshold(m, r, p).dump(2) << "\n";
      } else if (*efficiency) {
        std::cout << app::complexity_efficiency(m, p, s).dump(2) << "\n";
      } else {
        emit(app::complexity_sweep_csv(kind, app::parse_range(rows_text),
                                       app::parse_range(cols_text), fixed),
             out);
      }
    } else if (*landscape) {
      emit(app::cmd_landscape(problem, resolution, mode, shots, seed, data_dir),
           out);
    } else if (*verify) {
      std::optional<std::vector<int>> bw;
      if (!bandwidths.empty()) bw = parse_int_list(bandwidths);
      const auto report =
          app::cmd_verify_bandwidth(problem, grid, tol, bw, data_dir);
      std::cout << report.dump(2) << "\n";
      return report["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const app::ConfigError& e) {
    return fail(2, "config", e.what());
  } catch (const std::exception& e) {
    return fail(1, "runtime", e.what());
  }
  return 0;
}
