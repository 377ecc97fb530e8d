#include "qsr/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "qsr/complexity.hpp"
#include "qsr/fourier.hpp"
#include "qsr/objective.hpp"
#include "qsr/optimizers.hpp"
#include "qsr/problems.hpp"

namespace qsr::app {

namespace {

using nlohmann::json;

Problem problem_for(const std::string& name, const std::string& data_dir) {
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown problem '" + name + "'");
  }
  return load_problem(name, data_dir.empty() ? default_data_dir() : data_dir);
}

EvalMode mode_for(const std::string& mode, std::uint64_t shots,
                  std::uint64_t seed) {
  if (mode == "exact") return ExactMode{};
  if (mode == "shots") return ShotsMode{shots, seed};
  throw ConfigError("mode must be 'exact' or 'shots'");
}

// S_max on every axis; the benchmark lattice for QSR runs.
std::vector<int> isotropic_bandwidths(const Ansatz& ansatz) {
  const auto& s = ansatz.bandwidths();
  return std::vector<int>(s.size(), *std::max_element(s.begin(), s.end()));
}

json ledger_json(const EvalLedger& l) {
  return {{"samples", l.samples}, {"queries", l.queries}, {"shots", l.shots}};
}

void write_text(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

void RunConfig::validate() const {
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), problem) == names.end()) {
    throw ConfigError("unknown problem '" + problem + "'");
  }
  if (algorithm != "vqe" && algorithm != "qsr") {
    throw ConfigError("algorithm must be 'vqe' or 'qsr'");
  }
  if (mode != "exact" && mode != "shots") {
    throw ConfigError("mode must be 'exact' or 'shots'");
  }
  if (shots == 0) throw ConfigError("shots must be positive");
  if (!(oversample >= 1.0)) throw ConfigError("oversample must be >= 1");
  if (max_evals == 0) throw ConfigError("max_evals must be positive");
  if (bandwidths) {
    for (int s : *bandwidths) {
      if (s < 0) throw ConfigError("bandwidths must be non-negative");
    }
  }
}

RunConfig config_from_json(const json& doc) {
  static const std::set<std::string> kKeys = {
      "problem", "algorithm",  "mode",   "shots", "seed",      "bandwidths",
      "oversample", "max_evals", "theta0", "out", "model_out", "data_dir"};
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    c.problem = doc.value("problem", c.problem);
    c.algorithm = doc.value("algorithm", c.algorithm);
    c.mode = doc.value("mode", c.mode);
    c.shots = doc.value("shots", c.shots);
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("bandwidths") && !doc["bandwidths"].is_null()) {
      c.bandwidths = doc["bandwidths"].get<std::vector<int>>();
    }
    c.oversample = doc.value("oversample", c.oversample);
    c.max_evals = doc.value("max_evals", c.max_evals);
    c.theta0 = doc.value("theta0", c.theta0);
    c.out = doc.value("out", c.out);
    c.model_out = doc.value("model_out", c.model_out);
    c.data_dir = doc.value("data_dir", c.data_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const RunConfig& c) {
  json doc = {{"problem", c.problem},     {"algorithm", c.algorithm},
              {"mode", c.mode},           {"shots", c.shots},
              {"seed", c.seed},           {"oversample", c.oversample},
              {"max_evals", c.max_evals}, {"theta0", c.theta0},
              {"out", c.out},             {"model_out", c.model_out},
              {"data_dir", c.data_dir}};
  doc["bandwidths"] = c.bandwidths ? json(*c.bandwidths) : json(nullptr);
  return doc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return config_from_json(doc);
}

std::string default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

double error_percent(double found, double exact) {
  return std::abs(found - exact) / std::abs(exact) * 100.0;
}

json cmd_run(const RunConfig& config) {
  config.validate();
  const Problem problem = problem_for(config.problem, config.data_dir);
  const ObjectiveSpec spec(problem.ansatz, problem.observable,
                           mode_for(config.mode, config.shots, config.seed));
  const double exact = exact_spectrum(problem.observable).min_eigenvalue;

  json result = {{"problem", config.problem},
                 {"algorithm", config.algorithm},
                 {"mode", config.mode},
                 {"shots", config.mode == "shots" ? config.shots : 0},
                 {"seed", config.seed},
                 {"exact_energy", exact}};

  OptimizationResult opt;
  EvalLedger ledger;
  if (config.algorithm == "vqe") {
    Point theta0 = config.theta0;
    if (theta0.empty()) theta0.assign(spec.num_params(), 0.0);
    if (static_cast<int>(theta0.size()) != spec.num_params()) {
      throw ConfigError("theta0 has wrong length");
    }
    auto options = VqeOptions::for_mode(spec);
    options.nm.max_evals = config.max_evals;
    opt = vqe_run(spec, theta0, options, ledger);
  } else {
    QsrOptions options;
    options.bandwidth_override = isotropic_bandwidths(problem.ansatz);
    if (config.bandwidths) {
      if (static_cast<int>(config.bandwidths->size()) != spec.num_params()) {
        throw ConfigError("bandwidths has wrong length");
      }
      options.bandwidth_override = config.bandwidths;
    }
    options.oversample_factor = config.oversample;
    auto qsr = qsr_run(spec, options);
    opt = qsr.optimum;
    ledger = qsr.ledger;
    std::string model_path = config.model_out;
    if (model_path.empty()) {
      const auto dir = config.out.empty()
                           ? std::filesystem::path(default_output_dir())
                           : std::filesystem::path(config.out).parent_path();
      model_path = (dir / (config.problem + "-model.json")).string();
    }
    write_text(model_path, model_to_json(qsr.model) + "\n");
    result["model_path"] = model_path;
    result["bandwidths"] = qsr.model.bandwidths();
    result["residual_norm"] = qsr.model.metadata().residual_norm;
    result["undersampled"] = qsr.model.metadata().undersampled;
  }

  result["energy"] = opt.value_min;
  result["theta_min"] = opt.theta_min;
  result["converged"] = opt.converged;
  result["error_abs"] = std::abs(opt.value_min - exact);
  result["error_percent"] = error_percent(opt.value_min, exact);
  result["ledger"] = ledger_json(ledger);

  if (!config.out.empty()) write_text(config.out, result.dump(2) + "\n");
  return result;
}

Table1 cmd_table1(std::uint64_t seed, std::uint64_t shots, bool exact,
                  const std::string& data_dir) {
  if (!exact && shots == 0) throw ConfigError("shots must be positive");
  Table1 table;
  table.mode = exact ? "exact" : "shots";
  table.shots = exact ? 0 : shots;
  table.seed = seed;

  std::vector<std::pair<double, double>> vqe_counts;
  for (int n = 1; n <= 2; ++n) {
    const Problem problem =
        problem_for(n == 1 ? "deuteron-1" : "deuteron-2", data_dir);
    const double lambda = exact_spectrum(problem.observable).min_eigenvalue;
    for (const std::string alg : {"VQE", "QSR"}) {
      const std::uint64_t row_seed = derive_seed(seed, n, alg == "VQE" ? 1 : 2);
      const ObjectiveSpec spec(problem.ansatz, problem.observable,
                               mode_for(table.mode, shots, row_seed));
      Table1Row row;
      row.n = n;
      row.algorithm = alg;
      EvalLedger ledger;
      if (alg == "VQE") {
        const Point theta0(spec.num_params(), 0.0);
        const auto opt = vqe_run(spec, theta0, VqeOptions::for_mode(spec), ledger);
        row.energy = opt.value_min;
        vqe_counts.emplace_back(n, static_cast<double>(ledger.samples));
      } else {
        QsrOptions options;
        options.bandwidth_override = isotropic_bandwidths(problem.ansatz);
        const auto qsr = qsr_run(spec, options);
        ledger = qsr.ledger;
        row.energy = qsr.optimum.value_min;
      }
      row.samples = ledger.samples;
      row.queries = ledger.queries;
      row.error_percent = error_percent(row.energy, lambda);
      table.rows.push_back(row);
    }
  }
  try {
    const auto fit = complexity::fit_heuristic(vqe_counts);
    table.fit_m = fit.m;
    table.fit_p = fit.p;
  } catch (const std::invalid_argument&) {
    // VQE counts did not grow with n; leave the fit at zero.
  }
  return table;
}

std::string table1_text(const Table1& t) {
  std::ostringstream os;
  os << "mode=" << t.mode << " shots=" << t.shots << " seed=" << t.seed << "\n";
  os << std::left << std::setw(4) << "n" << std::setw(11) << "Algorithm"
     << std::setw(9) << "Samples" << std::setw(9) << "Queries" << "Error\n";
  for (const auto& r : t.rows) {
    std::ostringstream err;
    err << std::setprecision(3) << r.error_percent << "%";
    os << std::setw(4) << r.n << std::setw(11) << r.algorithm << std::setw(9)
       << r.samples << std::setw(9) << r.queries << err.str() << "\n";
  }
  os << "VQE heuristic fit: m=" << t.fit_m << " p=" << t.fit_p << "\n";
  return os.str();
}

std::string table1_csv(const Table1& t) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "n,Algorithm,Samples,Queries,Error%\n";
  for (const auto& r : t.rows) {
    os << r.n << ',' << r.algorithm << ',' << r.samples << ',' << r.queries
       << ',' << r.error_percent << '\n';
  }
  return os.str();
}

json table1_json(const Table1& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n},
                    {"algorithm", r.algorithm},
                    {"samples", r.samples},
                    {"queries", r.queries},
                    {"energy", r.energy},
                    {"error_percent", r.error_percent}});
  }
  return {{"mode", t.mode},
          {"shots", t.shots},
          {"seed", t.seed},
          {"rows", rows},
          {"vqe_fit", {{"m", t.fit_m}, {"p", t.fit_p}}}};
}

json complexity_threshold(double m, double r, double p) {
  const auto params = [&] {
    try {
      return complexity::ComplexityParams::from_ratio(m, p, r);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  const auto rep = complexity::analyze(params);
  json out = {{"m", m},
              {"p", p},
              {"r", r},
              {"s", params.s},
              {"n_star", rep.n_star},
              {"peak_ratio", rep.peak_ratio},
              {"advantage", rep.advantage_possible}};
  if (!rep.advantage_possible) return out;
  out["n0"] = rep.n0;
  out["n1"] = rep.n1;
  out["delta"] = rep.delta;
  out["a"] = rep.threshold_a;
  return out;
}

json complexity_efficiency(double m, double p, double s) {
  if (!(s > 0)) throw ConfigError("s must be > 0");
  json out = complexity_threshold(m, p / s, p);
  if (!out["advantage"].get<bool>()) return out;
  const complexity::ComplexityParams params(m, p, s);
  out["E"] = complexity::efficiency(params);
  out["E_integral"] =
      complexity::efficiency_integral(params, complexity::advantage_threshold(params));
  const auto window = complexity::discrete_window_efficiency(params);
  if (window.status == complexity::WindowStatus::Ok) {
    out["E_window"] = window.value;
  } else {
    out["E_window"] = nullptr;
    out["window_status"] = "empty";
  }
  return out;
}

AxisRange parse_range(const std::string& text) {
  AxisRange r;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':' ||
      !is.eof() || r.count < 1 || r.hi < r.lo) {
    throw ConfigError("range must look like lo:hi:count, got '" + text + "'");
  }
  return r;
}

std::string complexity_sweep_csv(const std::string& kind, const AxisRange& rows,
                                 const AxisRange& cols, double fixed) {
  const auto rv = complexity::linspace(rows.lo, rows.hi, rows.count);
  const auto cv = complexity::linspace(cols.lo, cols.hi, cols.count);
  try {
    if (kind == "threshold") {
      return complexity::sweep_to_csv(complexity::sweep_threshold(rv, cv, fixed));
    }
    if (kind == "efficiency") {
      return complexity::sweep_to_csv(complexity::sweep_efficiency(fixed, rv, cv));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("sweep kind must be 'threshold' or 'efficiency'");
}

std::string cmd_landscape(const std::string& problem_name, int resolution,
                          const std::string& mode, std::uint64_t shots,
                          std::uint64_t seed, const std::string& data_dir) {
  const Problem problem = problem_for(problem_name, data_dir);
  if (problem.ansatz.num_params() > 2) {
    throw ConfigError("landscape export supports at most two parameters");
  }
  if (resolution < 2) throw ConfigError("resolution must be >= 2");

  // Raw samples and the regression draw from independent shot streams.
  const ObjectiveSpec raw_spec(problem.ansatz, problem.observable,
                               mode_for(mode, shots, derive_seed(seed, 1)));
  const ObjectiveSpec fit_spec = raw_spec.reseeded(derive_seed(seed, 2));
  QsrOptions options;
  options.bandwidth_override = isotropic_bandwidths(problem.ansatz);
  const auto qsr = qsr_run(fit_spec, options);

  const std::vector<int> per_axis(problem.ansatz.num_params(), resolution);
  const auto grid = uniform_lattice(per_axis);
  EvalLedger ledger;
  const auto raw = evaluate_batch(raw_spec, grid, ledger);

  std::ostringstream os;
  os << std::setprecision(17);
  os << (per_axis.size() == 1 ? "theta" : "theta,eta") << ",raw,model\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double t : grid[i]) os << t << ',';
    os << raw[i] << ',' << qsr.model(grid[i]) << '\n';
  }
  return os.str();
}

json cmd_verify_bandwidth(const std::string& problem_name, int grid,
                          double tolerance,
                          const std::optional<std::vector<int>>& bandwidths,
                          const std::string& data_dir) {
  const Problem problem = problem_for(problem_name, data_dir);
  Ansatz ansatz = problem.ansatz;
  if (bandwidths) {
    if (bandwidths->size() != static_cast<std::size_t>(ansatz.num_params())) {
      throw ConfigError("bandwidths has wrong length");
    }
    ansatz = ansatz.with_bandwidths(*bandwidths);
  }
  BandwidthReport report;
  try {
    report = verify_bandwidth(ansatz, problem.observable, grid, tolerance);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json axes = json::array();
  for (std::size_t j = 0; j < report.axes.size(); ++j) {
    axes.push_back({{"axis", j},
                    {"declared", report.axes[j].declared},
                    {"detected", report.axes[j].detected},
                    {"pass", report.axes[j].pass}});
  }
  return {{"problem", problem_name},
          {"grid", grid},
          {"tolerance", tolerance},
          {"axes", axes},
          {"failing_axes", report.failing_axes()},
          {"pass", report.pass}};
}

}  // namespace qsr::app
