#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsr/pauli.hpp"

namespace qsr {

enum class GateKind { X, Y, Z, H, RX, RY, RZ, CNOT };

/// One gate of a circuit. Rotations follow R_A(t) = exp(-i t A / 2).
struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  int control = -1;  // CNOT only
  double angle = 0.0;  // RX/RY/RZ only

  static Gate x(int q) { return {GateKind::X, q}; }
  static Gate y(int q) { return {GateKind::Y, q}; }
  static Gate z(int q) { return {GateKind::Z, q}; }
  static Gate h(int q) { return {GateKind::H, q}; }
  static Gate rx(int q, double t) { return {GateKind::RX, q, -1, t}; }
  static Gate ry(int q, double t) { return {GateKind::RY, q, -1, t}; }
  static Gate rz(int q, double t) { return {GateKind::RZ, q, -1, t}; }
  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, target, control};
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Dense amplitudes over 2^N basis states. Basis index bit (N-1-q) holds
/// qubit q, so qubit 0 is the most significant bit, matching the leftmost
/// character of a Pauli label.
class StateVector {
 public:
  /// |0...0>
  explicit StateVector(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  double norm() const;

  /// Throws std::out_of_range for bad qubit indices.
  void apply(const Gate& gate);

  /// Applies a 2x2 unitary {u00, u01, u10, u11} to one qubit.
  void apply_single(int qubit, const std::complex<double> (&u)[4]);

  std::uint64_t bit_of(int qubit) const {
    return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
  }

 private:
  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// Runs gates in order on |0...0>.
StateVector apply_circuit(std::span<const Gate> gates, int num_qubits);

/// <psi|P|psi> without shot noise.
double exact_expectation(const StateVector& state, const PauliString& pauli);

/// sum_j w_j <psi|P_j|psi>
double exact_energy(const StateVector& state, const ObservableSum& obs);

/// Mean of `shots` simulated +-1 outcomes of measuring P. Identity strings
/// return exactly 1 without drawing.
double sampled_expectation(const StateVector& state, const PauliString& pauli,
                           std::uint64_t shots, std::uint64_t rng_seed);

/// Stream splitting: deterministic child seed for (parent, a, b).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                          std::uint64_t b = 0);

/// Uniform double in [0, 1) from a 64-bit draw (53 mantissa bits).
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace qsr
