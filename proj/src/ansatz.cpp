#include "qsr/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qsr {

Ansatz::Ansatz(std::string name, int num_qubits, std::vector<int> bandwidths,
               Builder builder)
    : name_(std::move(name)),
      num_qubits_(num_qubits),
      bandwidths_(std::move(bandwidths)),
      builder_(std::move(builder)) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("ansatz qubit count out of range");
  }
  if (bandwidths_.empty()) {
    throw std::invalid_argument("ansatz needs at least one parameter");
  }
  for (int s : bandwidths_) {
    if (s < 0) throw std::invalid_argument("bandwidths must be non-negative");
  }
  if (!builder_) throw std::invalid_argument("ansatz builder is empty");
}

std::vector<Gate> Ansatz::build(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != num_params()) {
    throw std::invalid_argument("ansatz '" + name_ + "' expects " +
                                std::to_string(num_params()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
  return builder_(theta);
}

StateVector Ansatz::prepare(std::span<const double> theta) const {
  const auto gates = build(theta);
  return apply_circuit(gates, num_qubits_);
}

Ansatz Ansatz::with_bandwidths(std::vector<int> bandwidths) const {
  if (bandwidths.size() != bandwidths_.size()) {
    throw std::invalid_argument("bandwidth override has wrong length");
  }
  return Ansatz(name_, num_qubits_, std::move(bandwidths), builder_);
}

Ansatz deuteron_ansatz_1() {
  return Ansatz("deuteron-1", 2, {1}, [](std::span<const double> t) {
    return std::vector<Gate>{Gate::x(0), Gate::ry(1, t[0]), Gate::cnot(1, 0)};
  });
}

Ansatz deuteron_ansatz_2() {
  return Ansatz("deuteron-2", 3, {1, 2}, [](std::span<const double> t) {
    const double theta = t[0];
    const double eta = t[1];
    return std::vector<Gate>{
        Gate::x(0),         Gate::ry(1, eta),   Gate::ry(2, theta),
        Gate::cnot(2, 0),   Gate::cnot(0, 1),   Gate::ry(1, -eta),
        Gate::cnot(0, 1),   Gate::cnot(1, 0),
    };
  });
}

Ansatz ansatz_by_name(const std::string& name) {
  if (name == "deuteron-1") return deuteron_ansatz_1();
  if (name == "deuteron-2") return deuteron_ansatz_2();
  throw std::invalid_argument("unknown ansatz '" + name + "'");
}

std::vector<std::string> ansatz_names() { return {"deuteron-1", "deuteron-2"}; }

std::vector<int> BandwidthReport::failing_axes() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (!axes[j].pass) out.push_back(static_cast<int>(j));
  }
  return out;
}

BandwidthReport verify_bandwidth(const Ansatz& ansatz, const ObservableSum& obs,
                                 int grid_points_per_axis, double tolerance,
                                 const BandwidthScanOptions& options) {
  if (ansatz.num_qubits() != obs.num_qubits()) {
    throw std::invalid_argument("ansatz and observable sizes differ");
  }
  const auto& declared = ansatz.bandwidths();
  const int s_max = *std::max_element(declared.begin(), declared.end());
  const int grid = grid_points_per_axis;
  if (grid <= 2 * s_max + 1) {
    throw std::invalid_argument("grid_points_per_axis must exceed 2*max(S)+1");
  }
  if (options.slices < 1) throw std::invalid_argument("need at least one slice");

  const double pi = std::numbers::pi;
  const int n = ansatz.num_params();
  std::mt19937_64 rng(options.seed);

  BandwidthReport report;
  std::vector<double> values(grid);
  for (int axis = 0; axis < n; ++axis) {
    AxisBandwidth result{declared[axis], 0, true};
    const int slices = (n == 1) ? 1 : options.slices;
    for (int slice = 0; slice < slices; ++slice) {
      std::vector<double> theta(n);
      for (auto& t : theta) t = pi - 2 * pi * to_unit(rng());
      for (int i = 0; i < grid; ++i) {
        theta[axis] = -pi + 2 * pi * (i + 1) / grid;
        values[i] = exact_energy(ansatz.prepare(theta), obs);
      }
      std::vector<double> mag(grid / 2 + 1);
      for (int k = 0; k <= grid / 2; ++k) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < grid; ++i) {
          acc += values[i] * std::polar(1.0, -2 * pi * k * i / grid);
        }
        mag[k] = std::abs(acc) / grid;
      }
      const double peak = *std::max_element(mag.begin(), mag.end());
      int highest = 0;
      for (int k = 0; k <= grid / 2; ++k) {
        if (mag[k] > tolerance * peak) highest = k;
      }
      result.detected = std::max(result.detected, highest);
    }
    result.pass = result.detected <= result.declared;
    report.pass = report.pass && result.pass;
    report.axes.push_back(result);
  }
  return report;
}

}  // namespace qsr
