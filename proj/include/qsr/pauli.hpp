#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qsr {

/// Largest register the dense paths (state vectors, spectrum oracle) accept.
inline constexpr int kMaxDenseQubits = 12;

/// A tensor product of single-qubit Pauli operators.
///
/// Qubit 0 is the leftmost character of the label ("ZI" is Z on qubit 0).
/// Internally the string is kept as a pair of bit masks where bit q belongs to
/// qubit q: X -> x only, Z -> z only, Y -> both.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string_view label);

  static PauliString identity(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::uint32_t x_mask() const { return x_mask_; }
  std::uint32_t z_mask() const { return z_mask_; }
  /// Qubits acted on non-trivially.
  std::uint32_t support() const { return x_mask_ | z_mask_; }
  bool is_identity() const { return support() == 0; }

  /// 'I', 'X', 'Y' or 'Z' for the given qubit.
  char op(int qubit) const;
  std::string label() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int num_qubits_ = 0;
  std::uint32_t x_mask_ = 0;
  std::uint32_t z_mask_ = 0;
};

/// Product of two Pauli strings: returns (phase, P) with a * b = phase * P
/// and phase in {1, -1, i, -i}.
std::pair<std::complex<double>, PauliString> multiply(const PauliString& a,
                                                      const PauliString& b);

struct PauliTerm {
  double weight = 0.0;
  PauliString pauli;
};

/// Weighted sum of Pauli strings over a fixed register size.
///
/// Duplicate strings are merged when the sum is built and terms whose merged
/// weight falls below kPruneThreshold are dropped. Terms keep the order in
/// which each string first appeared.
class ObservableSum {
 public:
  static constexpr double kPruneThreshold = 1e-14;

  ObservableSum(int num_qubits, std::vector<PauliTerm> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Sum of the weights of identity terms (measured classically).
  double identity_weight() const;

  /// Dense 2^N x 2^N matrix; basis index bit (N-1-q) is qubit q.
  Eigen::MatrixXcd to_dense() const;

  /// alpha * this + beta * other
  ObservableSum combine(double alpha, const ObservableSum& other,
                        double beta) const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
};

/// Parses the Hamiltonian JSON document:
///   {"num_qubits": N, "terms": [{"pauli": "XZ", "weight": 0.5}, ...]}
/// Throws std::invalid_argument on malformed input.
ObservableSum parse_observable(std::string_view json_text);
ObservableSum load_observable(const std::string& path);
std::string dump_observable(const ObservableSum& obs);

/// (H - gamma)^2 expanded back into Pauli form.
ObservableSum shift_square(const ObservableSum& obs, double gamma);

/// Dense eigensolve; throws std::invalid_argument above kMaxDenseQubits.
Spectrum exact_spectrum(const ObservableSum& obs);

}  // namespace qsr
