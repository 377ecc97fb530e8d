#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsr/complexity.hpp"

using namespace qsr::complexity;

namespace {

constexpr double kE = std::numbers::e;
constexpr double kLn2 = std::numbers::ln2;

double direct_ratio(double m, double p, double r, double n) {
  return std::pow(m * n * std::exp2(-n / r), p);
}

// Crossovers of m n 2^(-n/r) = 1 by bisection on either side of the peak.
std::pair<double, double> bisect_crossovers(double m, double r) {
  const double ns = r / kLn2;
  auto g = [&](double n) { return std::log(m * n) - n / r * kLn2; };
  return {oracle::bisect(g, 1e-12, ns), oracle::bisect(g, ns, 1e4)};
}

}  // namespace

TEST(ComplexityParams, Validation) {
  EXPECT_THROW(ComplexityParams(0, 1, 1), std::invalid_argument);
  EXPECT_THROW(ComplexityParams(1, -1, 1), std::invalid_argument);
  EXPECT_THROW(ComplexityParams(1, 1, NAN), std::invalid_argument);
  const ComplexityParams p(2, 6, 4);
  EXPECT_EQ(p.r(), 1.5);
  EXPECT_NEAR(ComplexityParams::from_ratio(2, 3, 1.5).s, 2.0, 1e-15);
}

TEST(BitsPerDimension, Definition) {
  EXPECT_NEAR(bits_per_dimension(1), std::log2(3.0), 1e-15);
  EXPECT_NEAR(bits_per_dimension(2), std::log2(5.0), 1e-15);
  EXPECT_EQ(bits_per_dimension(0), 0.0);
}

TEST(Ratio, Examples) {
  EXPECT_NEAR(ratio(ComplexityParams(1, 1, 1), 1.0), 0.5, 1e-15);
  const auto p = ComplexityParams::from_ratio(1.7, 3.0, 2.2);
  EXPECT_NEAR(ratio(p, p.n_star()), std::pow(1.7 * p.n_star() / kE, 3.0), 1e-12);
  EXPECT_THROW(ratio(p, 0.0), std::invalid_argument);
}

TEST(Ratio, SingleInteriorMaximum) {
  const auto p = ComplexityParams::from_ratio(2, 2, kE * kLn2);
  int sign_changes = 0;
  double prev = ratio(p, 0.01);
  bool rising = true;
  for (double n = 0.02; n < 40; n += 0.01) {
    const double v = ratio(p, n);
    if (rising && v < prev) {
      rising = false;
      ++sign_changes;
      EXPECT_NEAR(n, kE, 0.02);
    } else if (!rising && v > prev) {
      ++sign_changes;
    }
    prev = v;
  }
  EXPECT_EQ(sign_changes, 1);
}

TEST(Peak, Examples) {
  EXPECT_NEAR(peak(ComplexityParams::from_ratio(1, 2, kE * kLn2)).n_star, kE, 1e-14);
  // m n* = e gives peak ratio 1.
  const double r = 1.3;
  const double m = kE / (r / kLn2);
  EXPECT_NEAR(peak(ComplexityParams::from_ratio(m, 4, r)).peak_ratio, 1.0, 1e-13);
  const ComplexityParams p(2, 2, 1);
  double scan = 0;
  for (int i = 1; i <= 100000; ++i) scan = std::max(scan, direct_ratio(2, 2, 2, i * 1e-4));
  EXPECT_NEAR(peak(p).peak_ratio, scan, 1e-7);
  EXPECT_GE(peak(p).peak_ratio, scan);
}

TEST(Crossovers, MatchBisection) {
  const ComplexityParams p(2, 2, 1);
  const auto roots = crossovers(p);
  ASSERT_TRUE(roots);
  const auto [b0, b1] = bisect_crossovers(2, 2);
  EXPECT_NEAR(roots->first, b0, 1e-9);
  EXPECT_NEAR(roots->second, b1, 1e-9);
  EXPECT_NEAR(roots->second, 8.0, 1e-12);
  EXPECT_NEAR(ratio(p, roots->first), 1.0, 1e-9);
  EXPECT_NEAR(ratio(p, roots->second), 1.0, 1e-9);
}

TEST(Crossovers, CriticalAndSubCritical) {
  const double r = 2.0;
  const double m = kE * kLn2 / r;
  const auto roots = crossovers(ComplexityParams::from_ratio(m, 2, r));
  ASSERT_TRUE(roots);
  EXPECT_NEAR(roots->first, r / kLn2, 1e-12);
  EXPECT_EQ(roots->first, roots->second);
  EXPECT_FALSE(crossovers(ComplexityParams(0.1, 1, 1)));
  EXPECT_FALSE(ComplexityParams(0.1, 1, 1).advantage_possible());
}

TEST(Crossovers, DeltaFromLambertDifference) {
  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> m(1, 10), r(0.5, 5);
  for (int i = 0; i < 100; ++i) {
    const auto p = ComplexityParams::from_ratio(m(rng), 2, r(rng));
    const auto roots = crossovers(p);
    if (!roots) continue;
    const auto rep = analyze(p);
    const auto [b0, b1] = bisect_crossovers(p.m, p.r());
    EXPECT_NEAR(rep.delta, b1 - b0, 1e-10 * std::max(1.0, b1));
    EXPECT_LE(rep.n0, rep.n_star);
    EXPECT_GE(rep.n1, rep.n_star);
  }
}

TEST(Peak, InteriorMaximumProperty) {
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> m(0.1, 10), p(1, 20), s(0.5, 5);
  for (int i = 0; i < 200; ++i) {
    const ComplexityParams c(m(rng), p(rng), s(rng));
    const double ns = c.n_star();
    EXPECT_GE(ratio(c, ns), ratio(c, ns * (1 + 1e-4)));
    EXPECT_GE(ratio(c, ns), ratio(c, ns * (1 - 1e-4)));
  }
}

TEST(AdvantageThreshold, Examples) {
  EXPECT_EQ(advantage_threshold(ComplexityParams(2, 2, 1)), 8);
  const ComplexityParams p(3, 2, 1.5);
  const auto [b0, b1] = bisect_crossovers(3, p.r());
  EXPECT_EQ(advantage_threshold(p), static_cast<int>(std::ceil(b1)));
  EXPECT_THROW(advantage_threshold(ComplexityParams(0.1, 1, 1)), std::domain_error);
}

TEST(AdvantageThreshold, MonotoneInM) {
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    int prev = 0;
    for (double m = 0.2; m <= 10; m += 0.2) {
      const auto p = ComplexityParams::from_ratio(m, 2, r);
      if (!p.advantage_possible()) continue;
      const int a = advantage_threshold(p);
      EXPECT_GE(a, prev);
      prev = a;
    }
  }
}

TEST(AdvantageThreshold, IndependentOfPAtFixedR) {
  for (double r : {0.7, 1.9, 3.3}) {
    const auto base = analyze(ComplexityParams::from_ratio(4, 2, r));
    for (double p : {3.0, 7.5, 20.0}) {
      const auto rep = analyze(ComplexityParams::from_ratio(4, p, r));
      EXPECT_NEAR(rep.n0, base.n0, 1e-12);
      EXPECT_NEAR(rep.n1, base.n1, 1e-12);
      EXPECT_EQ(rep.threshold_a, base.threshold_a);
    }
  }
}

TEST(Efficiency, ClosedFormMatchesQuadrature) {
  for (double m : {2.0, 5.0, 9.0}) {
    for (double p : {2.0, 8.0, 20.0}) {
      for (double s : {1.0, 2.0, 3.0}) {
        const ComplexityParams c(m, p, s);
        if (!c.advantage_possible()) continue;
        const int a = advantage_threshold(c);
        const double ref = oracle::simpson(
            [&](double n) { return direct_ratio(m, p, c.r(), n); }, 1.0, a, 400000) / a;
        EXPECT_NEAR(efficiency(c) / ref, 1.0, 1e-9) << m << " " << p << " " << s;
        EXPECT_NEAR(efficiency_integral(c, a) / ref, 1.0, 1e-9);
      }
    }
  }
}

TEST(Efficiency, AboveOneWellInsideCriticalRegime) {
  for (double m : {3.0, 6.0, 10.0}) {
    for (double r : {1.0, 2.0, 4.0}) {
      const auto c = ComplexityParams::from_ratio(m, 4, r);
      const auto rep = analyze(c);
      if (rep.peak_ratio < 10 || rep.threshold_a < 3) continue;
      EXPECT_GT(efficiency(c), 1.0);
    }
  }
}

TEST(Efficiency, IncreasesWithP) {
  const double m = 4, s = 1;
  double prev = 0;
  for (double p = 2; p <= 12; p += 1) {
    const ComplexityParams c(m, p, s);
    ASSERT_TRUE(c.advantage_possible());
    const double e = efficiency(c);
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_THROW(efficiency(ComplexityParams(0.1, 1, 1)), std::domain_error);
}

TEST(WindowEfficiency, Examples) {
  EXPECT_EQ(discrete_window_efficiency(ComplexityParams(0.1, 1, 1)).status,
            WindowStatus::SubCritical);
  const ComplexityParams p(2, 2, 1);
  const auto w = discrete_window_efficiency(p);
  ASSERT_EQ(w.status, WindowStatus::Ok);
  const auto roots = *crossovers(p);
  double sum = 0;
  for (int n = static_cast<int>(std::ceil(roots.first)); n <= 8; ++n) sum += ratio(p, n);
  EXPECT_NEAR(w.value, sum / std::floor(roots.second - roots.first), 1e-12);
}

TEST(WindowEfficiency, EmptyWindowSignal) {
  // Just above criticality the window is narrower than one.
  const double r = 2.0;
  const double m = kE * kLn2 / r * 1.001;
  const auto w = discrete_window_efficiency(ComplexityParams::from_ratio(m, 2, r));
  EXPECT_EQ(w.status, WindowStatus::EmptyWindow);
}

TEST(WindowEfficiency, AboveOneAndCloseToIntegralOnWideWindows) {
  for (double m : {2.0, 4.0, 8.0}) {
    for (double r : {1.0, 2.0, 3.0, 5.0}) {
      const auto c = ComplexityParams::from_ratio(m, 2, r);
      const auto w = discrete_window_efficiency(c);
      if (w.status != WindowStatus::Ok) continue;
      EXPECT_GT(w.value, 1.0) << m << " " << r;
      const auto [n0, n1] = *crossovers(c);
      if (n1 - n0 < 10) continue;
      const double integral = oracle::simpson([&](double n) { return ratio(c, n); }, n0, n1) /
                              (n1 - n0);
      EXPECT_NEAR(w.value / integral, 1.0, 0.1) << m << " " << r;
    }
  }
}

TEST(RescaleTilde, Properties) {
  const auto p = ComplexityParams::from_ratio(2, 2, kE * kLn2);
  const auto [nt, rt] = rescale_tilde(p, kE);
  EXPECT_NEAR(nt, 1.0, 1e-15);
  EXPECT_NEAR(rt, 1.0, 1e-15);
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int i = 0; i < 50; ++i) {
    const auto c = ComplexityParams::from_ratio(u(rng), u(rng), u(rng));
    const auto [ns_t, r_t] = rescale_tilde(c, c.n_star());
    EXPECT_NEAR(ns_t, r_t, 1e-12 * r_t);
    const auto c2 = ComplexityParams::from_ratio(c.m, c.p, 2 * c.r());
    EXPECT_NEAR(rescale_tilde(c2, c2.n_star()).first, 2 * ns_t, 1e-12 * ns_t);
  }
}

TEST(FitHeuristic, ExactModelRecovery) {
  std::vector<std::pair<double, double>> data;
  for (double n : {1.0, 2.0, 3.0, 5.0}) data.emplace_back(n, std::pow(3 * n, 2));
  const auto f = fit_heuristic(data);
  EXPECT_NEAR(f.m, 3.0, 1e-9);
  EXPECT_NEAR(f.p, 2.0, 1e-9);
}

TEST(FitHeuristic, OutlierAboveCurveIsIgnored) {
  // Outlier at the geometric mean of the other abscissas leaves the slope unchanged.
  const std::vector<std::pair<double, double>> data{
      {1.0, 9.0}, {2.0, 36.0 * 5}, {4.0, 144.0}};
  const auto f = fit_heuristic(data);
  EXPECT_NEAR(f.p, 2.0, 1e-9);
  EXPECT_NEAR(f.m, 3.0, 1e-9);
  for (const auto& [n, v] : data) EXPECT_LE(std::pow(f.m * n, f.p), v * (1 + 1e-12));
}

TEST(FitHeuristic, Errors) {
  EXPECT_THROW(fit_heuristic(std::vector<std::pair<double, double>>{{1, 2}}),
               std::invalid_argument);
  EXPECT_THROW(fit_heuristic(std::vector<std::pair<double, double>>{{2, 2}, {2, 5}}),
               std::invalid_argument);
  EXPECT_THROW(fit_heuristic(std::vector<std::pair<double, double>>{{1, 5}, {2, 2}}),
               std::invalid_argument);
}

TEST(Sweeps, ThresholdAndEfficiencyGrids) {
  const auto ms = linspace(0.5, 10, 5);
  const auto rs = linspace(0.5, 4, 4);
  const auto t = sweep_threshold(ms, rs);
  ASSERT_EQ(t.values.size(), 5u);
  ASSERT_EQ(t.values[0].size(), 4u);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const auto c = ComplexityParams::from_ratio(ms[i], 2, rs[j]);
      EXPECT_EQ(t.values[i][j], c.advantage_possible() ? advantage_threshold(c) : 0);
    }
  }
  const auto e = sweep_efficiency(2, linspace(2, 20, 10), linspace(2, 5, 7));
  for (const auto& row : e.values) {
    for (double v : row) EXPECT_TRUE(std::isfinite(v));
  }
  const auto csv = sweep_to_csv(e);
  EXPECT_EQ(csv.substr(0, 4), "p\\s,");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
}

TEST(Linspace, Endpoints) {
  const auto v = linspace(2, 5, 4);
  EXPECT_EQ(v.front(), 2);
  EXPECT_EQ(v.back(), 5);
  EXPECT_EQ(linspace(1, 9, 1), std::vector<double>{1});
  EXPECT_THROW(linspace(0, 1, 0), std::invalid_argument);
}
