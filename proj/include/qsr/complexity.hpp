#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsr::complexity {

/// Low-qubit cost model comparing VQE's (m n)^p samples with QSR's 2^(s n).
///
/// m scales the VQE optimizer cost, p is its complexity power and s is the
/// per-dimension sample budget in bits, s = log2(2 S_max + 1). Most results
/// depend only on r = p / s.
struct ComplexityParams {
  double m = 1.0;
  double p = 1.0;
  double s = 1.0;

  ComplexityParams(double m, double p, double s);
  /// Params with the given m, p and r (s = p / r).
  static ComplexityParams from_ratio(double m, double p, double r);

  double r() const { return p / s; }
  /// n* = r / ln 2, where the VQE/QSR ratio peaks.
  double n_star() const;
  /// m n* > e: some n exists where QSR needs fewer quantum samples.
  bool advantage_possible() const;
};

/// s = log2(2 S_max + 1)
double bits_per_dimension(int max_bandwidth);

/// VQE/QSR = (m n 2^(-n/r))^p
double ratio(const ComplexityParams& params, double n);

struct Peak {
  double n_star;
  double peak_ratio;  // (m n* / e)^p
};
Peak peak(const ComplexityParams& params);

/// Roots of ratio(n) = 1, n0 = -n* W0(-1/(m n*)) and n1 = -n* W-1(...).
/// std::nullopt when m n* < e; n0 = n1 = n* at criticality.
std::optional<std::pair<double, double>> crossovers(
    const ComplexityParams& params);

/// ceil(n1): largest useful ansatz size for QSR. Throws std::domain_error in
/// the sub-critical regime.
int advantage_threshold(const ComplexityParams& params);

/// Closed form
///   E = (1 / (a s ln2)) (m / (s ln2))^p Gamma(p + 1, s ln2, a s ln2),
/// equal to (1/a) * integral_1^a ratio(n) dn under t = n s ln2.
/// Throws std::domain_error when sub-critical.
double efficiency(const ComplexityParams& params);

/// (1/a) * integral_1^a ratio(n) dn by direct quadrature of the ratio.
double efficiency_integral(const ComplexityParams& params, int a);

enum class WindowStatus { Ok, SubCritical, EmptyWindow };

struct WindowEfficiency {
  WindowStatus status = WindowStatus::Ok;
  double value = 0.0;
};

/// E_Delta = (1 / floor(Delta)) sum_{n = ceil(n0)}^{floor(n1)} ratio(n),
/// taken literally. EmptyWindow when no integer lies in [n0, n1] or
/// floor(Delta) = 0.
WindowEfficiency discrete_window_efficiency(const ComplexityParams& params);

/// (n / e, r / (e ln2)); the peak maps to n~* = r~.
std::pair<double, double> rescale_tilde(const ComplexityParams& params,
                                        double n);

struct ModelReport {
  double n_star = 0.0;
  double peak_ratio = 0.0;
  bool advantage_possible = false;
  double n0 = 0.0;
  double n1 = 0.0;
  double delta = 0.0;
  int threshold_a = 0;
  double efficiency_E = 0.0;
};

/// Everything above at once; crossover fields stay zero when sub-critical.
ModelReport analyze(const ComplexityParams& params);

struct HeuristicFit {
  double m;
  double p;
};

/// Fits samples ~ (m n)^p in log-log space, then lowers the intercept until
/// the curve lies on or below every point.
HeuristicFit fit_heuristic(std::span<const std::pair<double, double>> samples);

/// Matrix of values over two axes for external colour maps.
struct Sweep {
  std::string row_name;
  std::string col_name;
  std::vector<double> rows;
  std::vector<double> cols;
  std::vector<std::vector<double>> values;  // values[row][col]
};

/// Threshold a over (m, r); 0 marks sub-critical cells.
Sweep sweep_threshold(std::span<const double> m_values,
                      std::span<const double> r_values, double p = 2.0);

/// Efficiency E over (p, s) at fixed m; 0 marks sub-critical cells.
Sweep sweep_efficiency(double m, std::span<const double> p_values,
                       std::span<const double> s_values);

/// First line: "<row>\<col>" then the column values; each further line: the
/// row value then its cells.
std::string sweep_to_csv(const Sweep& sweep);

std::vector<double> linspace(double lo, double hi, int count);

}  // namespace qsr::complexity
