#include "qsr/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsr {

namespace {

constexpr double kImaginaryResidual = 1e-12;

// Single-qubit product a*b for labels in {I, X, Y, Z}.
std::pair<std::complex<double>, char> multiply_single(char a, char b) {
  using namespace std::complex_literals;
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  // Cyclic order X -> Y -> Z picks up +i, anti-cyclic -i.
  const std::string_view cycle = "XYZ";
  const auto ia = cycle.find(a);
  const auto ib = cycle.find(b);
  const char c = cycle[3 - ia - ib];
  return {(ib == (ia + 1) % 3) ? 1.0i : -1.0i, c};
}

}  // namespace

PauliString::PauliString(std::string_view label)
    : num_qubits_(static_cast<int>(label.size())) {
  if (label.empty()) {
    throw std::invalid_argument("Pauli string must act on at least one qubit");
  }
  if (num_qubits_ > 32) {
    throw std::invalid_argument("Pauli string longer than 32 qubits");
  }
  for (int q = 0; q < num_qubits_; ++q) {
    const std::uint32_t bit = 1u << q;
    switch (label[q]) {
      case 'I': break;
      case 'X': x_mask_ |= bit; break;
      case 'Y': x_mask_ |= bit; z_mask_ |= bit; break;
      case 'Z': z_mask_ |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli label '" + std::string(label) +
                                    "'");
    }
  }
}

PauliString PauliString::identity(int num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("identity needs at least one qubit");
  }
  return PauliString(std::string(num_qubits, 'I'));
}

char PauliString::op(int qubit) const {
  const bool x = (x_mask_ >> qubit) & 1u;
  const bool z = (z_mask_ >> qubit) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::label() const {
  std::string out(num_qubits_, 'I');
  for (int q = 0; q < num_qubits_; ++q) out[q] = op(q);
  return out;
}

std::pair<std::complex<double>, PauliString> multiply(const PauliString& a,
                                                      const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("Pauli strings differ in length");
  }
  std::complex<double> phase = 1.0;
  std::string label(a.num_qubits(), 'I');
  for (int q = 0; q < a.num_qubits(); ++q) {
    auto [ph, c] = multiply_single(a.op(q), b.op(q));
    phase *= ph;
    label[q] = c;
  }
  return {phase, PauliString(label)};
}

ObservableSum::ObservableSum(int num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("observable needs at least one qubit");
  }
  std::map<PauliString, std::size_t> index;
  for (auto& term : terms) {
    if (term.pauli.num_qubits() != num_qubits) {
      throw std::invalid_argument("Pauli string '" + term.pauli.label() +
                                  "' does not match num_qubits=" +
                                  std::to_string(num_qubits));
    }
    if (!std::isfinite(term.weight)) {
      throw std::invalid_argument("non-finite weight for '" +
                                  term.pauli.label() + "'");
    }
    auto [it, inserted] = index.emplace(term.pauli, terms_.size());
    if (inserted) {
      terms_.push_back(std::move(term));
    } else {
      terms_[it->second].weight += term.weight;
    }
  }
  std::erase_if(terms_, [](const PauliTerm& t) {
    return std::abs(t.weight) < kPruneThreshold;
  });
}

double ObservableSum::identity_weight() const {
  double w = 0.0;
  for (const auto& t : terms_) {
    if (t.pauli.is_identity()) w += t.weight;
  }
  return w;
}

Eigen::MatrixXcd ObservableSum::to_dense() const {
  if (num_qubits_ > kMaxDenseQubits) {
    throw std::invalid_argument("dense matrix limited to " +
                                std::to_string(kMaxDenseQubits) + " qubits");
  }
  using namespace std::complex_literals;
  const std::size_t dim = std::size_t{1} << num_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    // P|i> = phase(i) |i ^ flip>, with the per-qubit factors of X, Y, Z.
    std::size_t flip = 0;
    for (int q = 0; q < num_qubits_; ++q) {
      if (t.pauli.op(q) == 'X' || t.pauli.op(q) == 'Y') {
        flip |= std::size_t{1} << (num_qubits_ - 1 - q);
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      std::complex<double> phase = 1.0;
      for (int q = 0; q < num_qubits_; ++q) {
        const bool bit = (i >> (num_qubits_ - 1 - q)) & 1u;
        switch (t.pauli.op(q)) {
          case 'Y': phase *= bit ? -1.0i : 1.0i; break;
          case 'Z': phase *= bit ? -1.0 : 1.0; break;
          default: break;
        }
      }
      m(i ^ flip, i) += t.weight * phase;
    }
  }
  return m;
}

ObservableSum ObservableSum::combine(double alpha, const ObservableSum& other,
                                     double beta) const {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("observables act on different registers");
  }
  std::vector<PauliTerm> terms;
  for (const auto& t : terms_) terms.push_back({alpha * t.weight, t.pauli});
  for (const auto& t : other.terms_) terms.push_back({beta * t.weight, t.pauli});
  return ObservableSum(num_qubits_, std::move(terms));
}

ObservableSum parse_observable(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed Hamiltonian JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("num_qubits") ||
      !doc.contains("terms") || !doc["num_qubits"].is_number_integer() ||
      !doc["terms"].is_array()) {
    throw std::invalid_argument(
        "Hamiltonian JSON needs integer 'num_qubits' and array 'terms'");
  }
  const int n = doc["num_qubits"].get<int>();
  std::vector<PauliTerm> terms;
  for (const auto& entry : doc["terms"]) {
    if (!entry.is_object() || !entry.contains("pauli") ||
        !entry.contains("weight") || !entry["pauli"].is_string() ||
        !entry["weight"].is_number()) {
      throw std::invalid_argument(
          "each term needs string 'pauli' and numeric 'weight'");
    }
    terms.push_back({entry["weight"].get<double>(),
                     PauliString(entry["pauli"].get<std::string>())});
  }
  return ObservableSum(n, std::move(terms));
}

ObservableSum load_observable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Hamiltonian file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_observable(buf.str());
}

std::string dump_observable(const ObservableSum& obs) {
  nlohmann::json doc;
  doc["num_qubits"] = obs.num_qubits();
  doc["terms"] = nlohmann::json::array();
  for (const auto& t : obs.terms()) {
    doc["terms"].push_back({{"pauli", t.pauli.label()}, {"weight", t.weight}});
  }
  return doc.dump(2);
}

ObservableSum shift_square(const ObservableSum& obs, double gamma) {
  const int n = obs.num_qubits();
  const PauliString id = PauliString::identity(n);

  // (H - g)^2 = sum_jk w_j w_k P_j P_k - 2 g H + g^2
  std::map<PauliString, std::complex<double>> acc;
  for (const auto& a : obs.terms()) {
    for (const auto& b : obs.terms()) {
      auto [phase, p] = multiply(a.pauli, b.pauli);
      acc[p] += a.weight * b.weight * phase;
    }
    acc[a.pauli] += -2.0 * gamma * a.weight;
  }
  acc[id] += gamma * gamma;

  std::vector<PauliTerm> terms;
  for (const auto& [p, w] : acc) {
    if (std::abs(w.imag()) > kImaginaryResidual) {
      throw std::domain_error("shift_square produced imaginary weight on '" +
                              p.label() + "'; input is not Hermitian");
    }
    terms.push_back({w.real(), p});
  }
  return ObservableSum(n, std::move(terms));
}

Spectrum exact_spectrum(const ObservableSum& obs) {
  if (obs.num_qubits() > kMaxDenseQubits) {
    throw std::invalid_argument("exact_spectrum supports at most " +
                                std::to_string(kMaxDenseQubits) + " qubits");
  }
  const Eigen::MatrixXcd m = obs.to_dense();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::domain_error("observable matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }
  Spectrum out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.min_eigenvalue = out.eigenvalues.front();
  return out;
}

}  // namespace qsr
