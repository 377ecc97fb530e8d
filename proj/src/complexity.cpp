#include "qsr/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qsr/special_functions.hpp"

namespace qsr::complexity {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kE = std::numbers::e;
// m n* within this relative distance of e counts as exactly critical.
constexpr double kCriticalTol = 1e-12;
// n1 within this relative distance above an integer still rounds down to it.
constexpr double kCeilSlack = 1e-9;

void require_advantage(const ComplexityParams& params, const char* what) {
  if (!params.advantage_possible()) {
    throw std::domain_error(std::string(what) +
                            ": sub-critical parameters (m n* <= e)");
  }
}

}  // namespace

ComplexityParams::ComplexityParams(double m_, double p_, double s_)
    : m(m_), p(p_), s(s_) {
  if (!(m > 0) || !(p > 0) || !(s > 0) || !std::isfinite(m) ||
      !std::isfinite(p) || !std::isfinite(s)) {
    throw std::invalid_argument("complexity parameters m, p, s must be > 0");
  }
}

ComplexityParams ComplexityParams::from_ratio(double m, double p, double r) {
  if (!(r > 0)) throw std::invalid_argument("r must be > 0");
  return ComplexityParams(m, p, p / r);
}

double ComplexityParams::n_star() const { return r() / kLn2; }

bool ComplexityParams::advantage_possible() const {
  return m * n_star() > kE * (1 - kCriticalTol);
}

double bits_per_dimension(int max_bandwidth) {
  if (max_bandwidth < 0) throw std::invalid_argument("negative bandwidth");
  return std::log2(2.0 * max_bandwidth + 1.0);
}

double ratio(const ComplexityParams& params, double n) {
  if (!(n > 0)) throw std::invalid_argument("ratio needs n > 0");
  return std::pow(params.m * n * std::exp2(-n / params.r()), params.p);
}

Peak peak(const ComplexityParams& params) {
  const double ns = params.n_star();
  return {ns, std::pow(params.m * ns / kE, params.p)};
}

std::optional<std::pair<double, double>> crossovers(
    const ComplexityParams& params) {
  const double ns = params.n_star();
  const double mn = params.m * ns;
  if (std::abs(mn / kE - 1.0) <= kCriticalTol) return std::pair{ns, ns};
  if (mn < kE) return std::nullopt;
  const double arg = -1.0 / mn;
  return std::pair{-ns * lambert_w0(arg), -ns * lambert_wm1(arg)};
}

int advantage_threshold(const ComplexityParams& params) {
  require_advantage(params, "advantage_threshold");
  const double n1 = crossovers(params)->second;
  return static_cast<int>(std::ceil(n1 - kCeilSlack * std::max(1.0, n1)));
}

double efficiency(const ComplexityParams& params) {
  require_advantage(params, "efficiency");
  const int a = advantage_threshold(params);
  const double sl = params.s * kLn2;
  return 1.0 / (a * sl) * std::pow(params.m / sl, params.p) *
         gen_upper_incomplete_gamma(params.p + 1.0, sl, a * sl);
}

double efficiency_integral(const ComplexityParams& params, int a) {
  if (a < 1) throw std::invalid_argument("a must be >= 1");
  if (a == 1) return 0.0;
  const auto f = [&](double n) { return ratio(params, n); };
  return adaptive_quadrature(f, 1.0, static_cast<double>(a)) / a;
}

WindowEfficiency discrete_window_efficiency(const ComplexityParams& params) {
  const auto roots = crossovers(params);
  if (!roots || !params.advantage_possible()) {
    return {WindowStatus::SubCritical, 0.0};
  }
  const auto [n0, n1] = *roots;
  const double floor_delta = std::floor(n1 - n0);
  const long first = static_cast<long>(std::ceil(n0));
  const long last = static_cast<long>(std::floor(n1));
  if (last < first || floor_delta < 1.0) return {WindowStatus::EmptyWindow, 0.0};
  double sum = 0.0;
  for (long n = std::max(first, 1L); n <= last; ++n) {
    sum += ratio(params, static_cast<double>(n));
  }
  return {WindowStatus::Ok, sum / floor_delta};
}

std::pair<double, double> rescale_tilde(const ComplexityParams& params,
                                        double n) {
  return {n / kE, params.r() / (kE * kLn2)};
}

ModelReport analyze(const ComplexityParams& params) {
  ModelReport rep;
  const auto pk = peak(params);
  rep.n_star = pk.n_star;
  rep.peak_ratio = pk.peak_ratio;
  rep.advantage_possible = params.advantage_possible();
  if (!rep.advantage_possible) return rep;
  const auto [n0, n1] = *crossovers(params);
  rep.n0 = n0;
  rep.n1 = n1;
  rep.delta = n1 - n0;
  rep.threshold_a = advantage_threshold(params);
  rep.efficiency_E = efficiency(params);
  return rep;
}

HeuristicFit fit_heuristic(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("fit_heuristic needs at least two points");
  }
  std::vector<double> x, y;
  for (const auto& [n, count] : samples) {
    if (!(n > 0) || !(count > 0)) {
      throw std::invalid_argument("fit_heuristic needs positive n and samples");
    }
    x.push_back(std::log(n));
    y.push_back(std::log(count));
  }
  const double k = static_cast<double>(x.size());
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i] / k;
    ym += y[i] / k;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (sxx <= 1e-300) {
    throw std::invalid_argument("fit_heuristic needs at least two distinct n");
  }
  const double p = sxy / sxx;
  if (!(p > 0)) {
    throw std::invalid_argument("fit_heuristic: sample counts do not grow with n");
  }
  double intercept = ym - p * xm;
  double min_residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    min_residual = std::min(min_residual, y[i] - intercept - p * x[i]);
  }
  intercept += min_residual;
  // log(samples) = p log m + p log n
  return {std::exp(intercept / p), p};
}

Sweep sweep_threshold(std::span<const double> m_values,
                      std::span<const double> r_values, double p) {
  Sweep out{"m", "r", {m_values.begin(), m_values.end()},
            {r_values.begin(), r_values.end()}, {}};
  for (double m : m_values) {
    std::vector<double> row;
    for (double r : r_values) {
      const auto params = ComplexityParams::from_ratio(m, p, r);
      row.push_back(params.advantage_possible() ? advantage_threshold(params)
                                                : 0.0);
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

Sweep sweep_efficiency(double m, std::span<const double> p_values,
                       std::span<const double> s_values) {
  Sweep out{"p", "s", {p_values.begin(), p_values.end()},
            {s_values.begin(), s_values.end()}, {}};
  for (double p : p_values) {
    std::vector<double> row;
    for (double s : s_values) {
      const ComplexityParams params(m, p, s);
      row.push_back(params.advantage_possible() ? efficiency(params) : 0.0);
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

std::string sweep_to_csv(const Sweep& sweep) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << sweep.row_name << '\\' << sweep.col_name;
  for (double c : sweep.cols) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    os << sweep.rows[i];
    for (double v : sweep.values[i]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs count >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

}  // namespace qsr::complexity
