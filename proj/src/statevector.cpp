#include "qsr/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qsr {

namespace {

using cplx = std::complex<double>;

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) {
    throw std::out_of_range("qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n) +
                            " qubits");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                          std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(parent) ^ a) ^ (b * 0xd1b54a32d192ed03ull));
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("state vector supports 1.." +
                                std::to_string(kMaxDenseQubits) + " qubits");
  }
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply_single(int qubit, const cplx (&u)[4]) {
  check_qubit(qubit, num_qubits_);
  const std::uint64_t mask = bit_of(qubit);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const cplx a0 = amps_[i];
    const cplx a1 = amps_[i | mask];
    amps_[i] = u[0] * a0 + u[1] * a1;
    amps_[i | mask] = u[2] * a0 + u[3] * a1;
  }
}

void StateVector::apply(const Gate& g) {
  using namespace std::complex_literals;
  const double c = std::cos(g.angle / 2);
  const double s = std::sin(g.angle / 2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::X: apply_single(g.target, {0, 1, 1, 0}); break;
    case GateKind::Y: apply_single(g.target, {0, -1.0i, 1.0i, 0}); break;
    case GateKind::Z: apply_single(g.target, {1, 0, 0, -1}); break;
    case GateKind::H: apply_single(g.target, {r, r, r, -r}); break;
    case GateKind::RX: apply_single(g.target, {c, -1.0i * s, -1.0i * s, c}); break;
    case GateKind::RY: apply_single(g.target, {c, -s, s, c}); break;
    case GateKind::RZ:
      apply_single(g.target, {cplx(c, -s), 0, 0, cplx(c, s)});
      break;
    case GateKind::CNOT: {
      check_qubit(g.control, num_qubits_);
      check_qubit(g.target, num_qubits_);
      if (g.control == g.target) {
        throw std::invalid_argument("CNOT control equals target");
      }
      const std::uint64_t cm = bit_of(g.control);
      const std::uint64_t tm = bit_of(g.target);
      for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
      }
      break;
    }
  }
}

StateVector apply_circuit(std::span<const Gate> gates, int num_qubits) {
  StateVector state(num_qubits);
  for (const auto& g : gates) state.apply(g);
  return state;
}

double exact_expectation(const StateVector& state, const PauliString& pauli) {
  const int n = state.num_qubits();
  if (pauli.num_qubits() != n) {
    throw std::invalid_argument("Pauli string length does not match state");
  }
  std::uint64_t flip = 0, zmask = 0, ymask = 0;
  for (int q = 0; q < n; ++q) {
    const char op = pauli.op(q);
    if (op == 'X' || op == 'Y') flip |= state.bit_of(q);
    if (op == 'Z' || op == 'Y') zmask |= state.bit_of(q);
    if (op == 'Y') ymask |= state.bit_of(q);
  }
  // Y = i X Z, so each Y contributes a factor i on top of its Z sign.
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx yphase = kIPow[std::popcount(ymask) % 4];
  const auto amps = state.amplitudes();
  cplx acc = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double sign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[i ^ flip]) * sign * amps[i];
  }
  return (yphase * acc).real();
}

double exact_energy(const StateVector& state, const ObservableSum& obs) {
  double e = 0.0;
  for (const auto& t : obs.terms()) {
    e += t.pauli.is_identity() ? t.weight
                               : t.weight * exact_expectation(state, t.pauli);
  }
  return e;
}

double sampled_expectation(const StateVector& state, const PauliString& pauli,
                           std::uint64_t shots, std::uint64_t rng_seed) {
  using namespace std::complex_literals;
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (pauli.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("Pauli string length does not match state");
  }
  if (pauli.is_identity()) return 1.0;

  // Rotate into the computational basis: H for X, H S^dag for Y.
  StateVector rotated = state;
  const double r = 1.0 / std::sqrt(2.0);
  std::uint64_t parity_mask = 0;
  for (int q = 0; q < state.num_qubits(); ++q) {
    switch (pauli.op(q)) {
      case 'X': rotated.apply_single(q, {r, r, r, -r}); break;
      case 'Y': rotated.apply_single(q, {r, -1.0i * r, r, 1.0i * r}); break;
      default: break;
    }
    if (pauli.op(q) != 'I') parity_mask |= state.bit_of(q);
  }

  const auto amps = rotated.amplitudes();
  std::vector<double> cdf(amps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    total += std::norm(amps[i]);
    cdf[i] = total;
  }

  std::mt19937_64 rng(rng_seed);
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = to_unit(rng()) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const auto idx = static_cast<std::uint64_t>(it - cdf.begin());
    sum += (std::popcount(idx & parity_mask) & 1) ? -1 : 1;
  }
  return static_cast<double>(sum) / static_cast<double>(shots);
}

}  // namespace qsr
