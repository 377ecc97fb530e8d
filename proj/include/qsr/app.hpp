#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsr::app {

/// Invalid configuration: maps to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Environment variable naming the default directory for written files.
inline constexpr const char* kOutputDirEnv = "QSR_OUTPUT_DIR";

struct RunConfig {
  std::string problem = "deuteron-1";
  std::string algorithm = "qsr";  // "vqe" | "qsr"
  std::string mode = "exact";     // "exact" | "shots"
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::optional<std::vector<int>> bandwidths;
  double oversample = 1.0;
  std::uint64_t max_evals = 1000;
  std::vector<double> theta0;  // empty: all zeros
  std::string out;             // result JSON path, empty: stdout only
  std::string model_out;       // QSR model path, empty: <output dir>/<problem>-model.json
  std::string data_dir;        // empty: default_data_dir()

  /// Throws ConfigError on bad values.
  void validate() const;
};

/// Unknown keys and wrongly typed values raise ConfigError.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::string& path);

/// $QSR_OUTPUT_DIR or ".".
std::string default_output_dir();

/// |found - exact| / |exact| * 100
double error_percent(double found, double exact);

/// Runs VQE or QSR and returns the result document:
/// QSR samples on the S_max lattice on every axis unless bandwidths are given.
/// {problem, algorithm, mode, shots, seed, energy, exact_energy, error_abs,
///  error_percent, theta_min, converged, ledger: {samples, queries, shots},
///  model_path (QSR only), bandwidths (QSR only)}.
/// Writes it to config.out when set.
nlohmann::json cmd_run(const RunConfig& config);

struct Table1Row {
  int n = 0;
  std::string algorithm;
  std::uint64_t samples = 0;
  std::uint64_t queries = 0;
  double energy = 0.0;
  double error_percent = 0.0;
};

struct Table1 {
  std::vector<Table1Row> rows;
  std::string mode;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  /// (m, p) of samples ~ (m n)^p fitted to the VQE rows.
  double fit_m = 0.0;
  double fit_p = 0.0;
};

/// n = 1, 2 for VQE and QSR with the default settings of each.
Table1 cmd_table1(std::uint64_t seed, std::uint64_t shots, bool exact = false,
                  const std::string& data_dir = "");
std::string table1_text(const Table1& table);
std::string table1_csv(const Table1& table);
nlohmann::json table1_json(const Table1& table);

/// Single-point report for (m, r[, p]): n_star, peak_ratio, n0, n1, delta, a,
/// or {"advantage": false} when sub-critical.
nlohmann::json complexity_threshold(double m, double r, double p = 2.0);

/// Adds the efficiency E (closed form and quadrature) and the window average.
nlohmann::json complexity_efficiency(double m, double p, double s);

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

/// Parses "lo:hi:count".
AxisRange parse_range(const std::string& text);

/// kind "threshold": rows m, cols r; kind "efficiency": rows p, cols s.
std::string complexity_sweep_csv(const std::string& kind, const AxisRange& rows,
                                 const AxisRange& cols, double fixed);

/// CSV "theta[,eta],raw,model" over a resolution^n grid; n <= 2.
std::string cmd_landscape(const std::string& problem, int resolution,
                          const std::string& mode, std::uint64_t shots,
                          std::uint64_t seed, const std::string& data_dir = "");

nlohmann::json cmd_verify_bandwidth(
    const std::string& problem, int grid, double tolerance,
    const std::optional<std::vector<int>>& bandwidths = std::nullopt,
    const std::string& data_dir = "");

}  // namespace qsr::app
