#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsr/ansatz.hpp"
#include "qsr/problems.hpp"

using namespace qsr;

namespace {

constexpr double kPi = std::numbers::pi;

double energy(const Ansatz& a, const ObservableSum& h, std::vector<double> theta) {
  return exact_energy(a.prepare(theta), h);
}

}  // namespace

TEST(DeuteronAnsatz1, Shape) {
  const auto a = deuteron_ansatz_1();
  EXPECT_EQ(a.num_qubits(), 2);
  EXPECT_EQ(a.num_params(), 1);
  EXPECT_EQ(a.bandwidths(), std::vector<int>{1});
}

TEST(DeuteronAnsatz1, ZeroAngleIsReferenceState) {
  const auto a = deuteron_ansatz_1();
  const std::vector<double> zero{0.0};
  const auto s = a.prepare(zero);
  EXPECT_NEAR(std::abs(s.amplitudes()[0b10]), 1.0, 1e-15);
  bool has_zero_rotation = false;
  for (const auto& g : a.build(zero)) {
    if (g.kind == GateKind::RY) has_zero_rotation = has_zero_rotation || g.angle == 0.0;
  }
  EXPECT_TRUE(has_zero_rotation);
}

TEST(DeuteronAnsatz1, EnergyMatchesHandExpansion) {
  const auto p = load_problem("deuteron-1");
  for (double t = -kPi; t <= kPi; t += 0.1) {
    EXPECT_NEAR(energy(p.ansatz, p.observable, {t}), oracle::deuteron1_energy(t), 1e-12);
  }
}

TEST(DeuteronAnsatz1, ReachesGroundState) {
  const auto p = load_problem("deuteron-1");
  const double lambda = exact_spectrum(p.observable).min_eigenvalue;
  // Minimum of a - b cos t - c sin t is a - hypot(b, c) at t = atan2(c, b).
  const double t = std::atan2(4.286608, 6.343291);
  EXPECT_NEAR(energy(p.ansatz, p.observable, {t}), lambda, 1e-9);
}

TEST(DeuteronAnsatz2, Shape) {
  const auto a = deuteron_ansatz_2();
  EXPECT_EQ(a.num_qubits(), 3);
  EXPECT_EQ(a.num_params(), 2);
  EXPECT_EQ(a.bandwidths(), (std::vector<int>{1, 2}));
}

TEST(DeuteronAnsatz2, ZeroAnglesGiveReferenceState) {
  const auto s = deuteron_ansatz_2().prepare(std::vector<double>{0.0, 0.0});
  EXPECT_NEAR(std::abs(s.amplitudes()[0b100]), 1.0, 1e-15);
}

TEST(DeuteronAnsatz2, MatchesKroneckerOracle) {
  const auto a = deuteron_ansatz_2();
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const double theta = u(rng), eta = u(rng);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v[0] = 1;
    v = oracle::embed(oracle::pauli_matrix('X'), 0, 3) * v;
    v = oracle::embed(oracle::ry(eta), 1, 3) * v;
    v = oracle::embed(oracle::ry(theta), 2, 3) * v;
    v = oracle::cnot(2, 0, 3) * v;
    v = oracle::cnot(0, 1, 3) * v;
    v = oracle::embed(oracle::ry(-eta), 1, 3) * v;
    v = oracle::cnot(0, 1, 3) * v;
    v = oracle::cnot(1, 0, 3) * v;
    const auto s = a.prepare(std::vector<double>{theta, eta});
    for (int k = 0; k < 8; ++k) EXPECT_LT(std::abs(s.amplitudes()[k] - v[k]), 1e-12);
  }
}

TEST(DeuteronAnsatz2, DenseScanReachesGroundState) {
  const auto p = load_problem("deuteron-2");
  const double lambda = exact_spectrum(p.observable).min_eigenvalue;
  double best = INFINITY;
  for (double t = -kPi; t <= kPi; t += 0.005) {
    for (double e = -kPi; e <= kPi; e += 0.02) {
      best = std::min(best, energy(p.ansatz, p.observable, {t, e}));
    }
  }
  EXPECT_GE(best, lambda - 1e-10);
  EXPECT_LT(best - lambda, 1e-3);
}

TEST(Ansatz, StructureIndependentOfAngles) {
  for (const auto& name : ansatz_names()) {
    const auto a = ansatz_by_name(name);
    const auto g0 = a.build(std::vector<double>(a.num_params(), 0.0));
    const auto g1 = a.build(std::vector<double>(a.num_params(), 1.3));
    ASSERT_EQ(g0.size(), g1.size());
    for (std::size_t i = 0; i < g0.size(); ++i) {
      EXPECT_EQ(g0[i].kind, g1[i].kind);
      EXPECT_EQ(g0[i].target, g1[i].target);
      EXPECT_EQ(g0[i].control, g1[i].control);
    }
  }
}

TEST(Ansatz, PeriodicInEveryParameter) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (const auto& name : problem_names()) {
    const auto p = load_problem(name);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> t(p.ansatz.num_params());
      for (auto& x : t) x = u(rng);
      for (int j = 0; j < p.ansatz.num_params(); ++j) {
        auto shifted = t;
        shifted[j] += 2 * kPi;
        EXPECT_NEAR(energy(p.ansatz, p.observable, t),
                    energy(p.ansatz, p.observable, shifted), 1e-12);
      }
    }
  }
}

TEST(Ansatz, Errors) {
  EXPECT_THROW(ansatz_by_name("nope"), std::invalid_argument);
  EXPECT_THROW(deuteron_ansatz_1().build(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(VerifyBandwidth, DeuteronAnsatzes) {
  const auto one = load_problem("deuteron-1");
  const auto r1 = verify_bandwidth(one.ansatz, one.observable, 64, 1e-8);
  EXPECT_TRUE(r1.pass);
  EXPECT_EQ(r1.axes[0].detected, 1);

  const auto two = load_problem("deuteron-2");
  const auto r2 = verify_bandwidth(two.ansatz, two.observable, 64, 1e-8);
  EXPECT_TRUE(r2.pass);
  EXPECT_EQ(r2.axes[0].detected, 1);
  EXPECT_EQ(r2.axes[1].detected, 2);
}

TEST(VerifyBandwidth, ConstantObservableHasNoHarmonics) {
  const auto a = deuteron_ansatz_2();
  const ObservableSum id(3, {{1.5, PauliString("III")}});
  const auto r = verify_bandwidth(a, id, 16, 1e-8);
  EXPECT_TRUE(r.pass);
  for (const auto& ax : r.axes) EXPECT_EQ(ax.detected, 0);
}

TEST(VerifyBandwidth, UnderDeclaredAxisIsNamed) {
  const auto p = load_problem("deuteron-2");
  const auto r = verify_bandwidth(p.ansatz.with_bandwidths({1, 1}), p.observable, 32, 1e-8);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failing_axes(), std::vector<int>{1});
}

TEST(VerifyBandwidth, RejectsCoarseGrid) {
  const auto p = load_problem("deuteron-2");
  EXPECT_THROW(verify_bandwidth(p.ansatz, p.observable, 5, 1e-8), std::invalid_argument);
}
