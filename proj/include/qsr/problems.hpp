#pragma once

#include <string>
#include <vector>

#include "qsr/ansatz.hpp"
#include "qsr/pauli.hpp"

namespace qsr {

/// A benchmark: an ansatz paired with the Hamiltonian it explores.
struct Problem {
  std::string name;
  Ansatz ansatz;
  ObservableSum observable;
};

/// $QSR_DATA_DIR if set, otherwise the data/ directory of the source tree.
std::string default_data_dir();

/// "deuteron-1" (2 qubits, deuteron-2q.json) or "deuteron-2" (3 qubits,
/// deuteron-3q.json).
Problem load_problem(const std::string& name,
                     const std::string& data_dir = default_data_dir());

std::vector<std::string> problem_names();

}  // namespace qsr
