#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsr/pauli.hpp"
#include "qsr/statevector.hpp"

namespace qsr {

/// Parametrized state-preparation circuit with per-parameter bandwidths.
///
/// The builder maps a parameter vector to a gate list; only gate angles may
/// depend on the parameters. bandwidths[j] is the declared largest harmonic of
/// the expectation landscape along parameter j.
class Ansatz {
 public:
  using Builder = std::function<std::vector<Gate>(std::span<const double>)>;

  Ansatz(std::string name, int num_qubits, std::vector<int> bandwidths,
         Builder builder);

  const std::string& name() const { return name_; }
  int num_qubits() const { return num_qubits_; }
  int num_params() const { return static_cast<int>(bandwidths_.size()); }
  const std::vector<int>& bandwidths() const { return bandwidths_; }

  std::vector<Gate> build(std::span<const double> theta) const;
  StateVector prepare(std::span<const double> theta) const;

  /// Same circuit, different bandwidth annotation.
  Ansatz with_bandwidths(std::vector<int> bandwidths) const;

 private:
  std::string name_;
  int num_qubits_;
  std::vector<int> bandwidths_;
  Builder builder_;
};

/// Two-qubit single-excitation circuit: X(0) RY(t, 1) CNOT(1 -> 0). S = [1].
Ansatz deuteron_ansatz_1();

/// Three-qubit, two-parameter circuit with parameters (theta, eta):
///   X(0) RY(eta, 1) RY(theta, 2) CNOT(2->0) CNOT(0->1) RY(-eta, 1)
///   CNOT(0->1) CNOT(1->0)
/// eta enters twice, so S = [1, 2].
Ansatz deuteron_ansatz_2();

/// "deuteron-1" / "deuteron-2"; throws std::invalid_argument otherwise.
Ansatz ansatz_by_name(const std::string& name);
std::vector<std::string> ansatz_names();

struct AxisBandwidth {
  int declared = 0;
  int detected = 0;  // max over slices
  bool pass = false;
};

struct BandwidthReport {
  std::vector<AxisBandwidth> axes;
  bool pass = true;

  /// Indices of axes whose detected content exceeds the declaration.
  std::vector<int> failing_axes() const;
};

struct BandwidthScanOptions {
  int slices = 5;
  std::uint64_t seed = 2020;
};

/// Scans the exact objective along each axis on a uniform grid (other
/// parameters at seeded random slices), takes the DFT and reports the highest
/// harmonic whose magnitude exceeds tolerance * (largest magnitude).
/// Requires grid_points_per_axis > 2 * max(S) + 1.
BandwidthReport verify_bandwidth(const Ansatz& ansatz, const ObservableSum& obs,
                                 int grid_points_per_axis, double tolerance,
                                 const BandwidthScanOptions& options = {});

}  // namespace qsr
