#include "qsr/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

namespace qsr {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e
constexpr double kStepTol = 1e-14;
constexpr int kMaxIter = 50;

// Beyond this distance below -1/e the argument is treated as out of domain
// rather than as rounding of the branch point.
constexpr double kBranchSlack = 4 * std::numeric_limits<double>::epsilon();

bool at_branch_point(double x) { return x <= -kInvE * (1 - kBranchSlack); }

void check_branch_domain(double x, const char* name) {
  if (std::isnan(x) || x < -kInvE * (1 + kBranchSlack)) {
    throw std::domain_error(std::string(name) + ": argument below -1/e");
  }
}

// Halley iteration on f(w) = w e^w - x.
double halley(double x, double w) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= kStepTol * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Halley iteration on g(w) = w + log|w| - log|x|, same roots for large |w|
// where w e^w over/underflows.
double halley_log(double x, double w) {
  const double lx = std::log(std::abs(x));
  for (int i = 0; i < kMaxIter; ++i) {
    const double g = w + std::log(std::abs(w)) - lx;
    const double g1 = 1.0 + 1.0 / w;
    const double g2 = -1.0 / (w * w);
    const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
    w -= step;
    if (std::abs(step) <= kStepTol * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Series about the branch point in p = sqrt(2 (e x + 1)); sign selects branch.
double branch_series(double x, double sign) {
  const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
  return -1.0 + sign * p - p * p / 3.0 + sign * 11.0 / 72.0 * p * p * p;
}

double asymptotic(double l1) {
  const double l2 = std::log(std::abs(l1));
  return l1 - l2 + l2 / l1;
}

// 15-point Kronrod rule with its embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double lo,
                      double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double k = kWk[7] * fc;
  double g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double v = f(c - h * kXk[i]) + f(c + h * kXk[i]);
    k += kWk[i] * v;
    if (i % 2 == 1) g += kWg[i / 2] * v;
  }
  return {lo, hi, k * h, std::abs((k - g) * h)};
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double lo,
                           double hi, double rel_tol) {
  std::priority_queue<Segment> queue;
  const Segment whole = gauss_kronrod(f, lo, hi);
  queue.push(whole);
  double total = whole.value;
  double error = whole.error;
  for (int it = 0; it < 20000; ++it) {
    if (error <= rel_tol * std::abs(total) ||
        error <= std::numeric_limits<double>::min()) {
      break;
    }
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod(f, worst.lo, mid);
    const Segment right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed the drift of the incremental updates.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    queue.pop();
  }
  return sum;
}

double lambert_w0(double x) {
  check_branch_domain(x, "lambert_w0");
  if (at_branch_point(x)) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  if (x < -0.25) return halley(x, branch_series(x, 1.0));
  if (x < 3.0) return halley(x, std::log1p(x));
  return halley_log(x, asymptotic(std::log(x)));
}

double lambert_wm1(double x) {
  check_branch_domain(x, "lambert_wm1");
  if (x >= 0.0) throw std::domain_error("lambert_wm1: argument must be < 0");
  if (at_branch_point(x)) return -1.0;
  if (x < -0.25) return halley(x, branch_series(x, -1.0));
  return halley_log(x, asymptotic(std::log(-x)));
}

double gen_upper_incomplete_gamma(double a, double x0, double x1) {
  if (!(a > 0.0) || !(x0 >= 0.0) || !(x1 >= x0) || std::isinf(x1)) {
    throw std::domain_error(
        "gen_upper_incomplete_gamma needs a > 0 and 0 <= x0 <= x1 < inf");
  }
  if (x0 == x1) return 0.0;
  constexpr double kRelTol = 1e-13;
  if (a >= 1.0) {
    const auto f = [a](double t) {
      return t == 0.0 ? (a == 1.0 ? 1.0 : 0.0)
                      : std::exp((a - 1.0) * std::log(t) - t);
    };
    return adaptive_quadrature(f, x0, x1, kRelTol);
  }
  // t = u^(1/a) removes the t^(a-1) singularity at the origin.
  const double inv_a = 1.0 / a;
  const auto g = [inv_a](double u) { return inv_a * std::exp(-std::pow(u, inv_a)); };
  return adaptive_quadrature(g, std::pow(x0, a), std::pow(x1, a), kRelTol);
}

}  // namespace qsr
