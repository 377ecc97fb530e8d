#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "qsr/ansatz.hpp"
#include "qsr/pauli.hpp"

namespace qsr {

using Point = std::vector<double>;

struct ExactMode {};

/// Every non-identity term is measured with the full `shots` budget.
struct ShotsMode {
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
};

using EvalMode = std::variant<ExactMode, ShotsMode>;

/// h(theta) = <H>(theta) for an ansatz/observable pair.
struct ObjectiveSpec {
  Ansatz ansatz;
  ObservableSum observable;
  EvalMode mode = ExactMode{};

  ObjectiveSpec(Ansatz ansatz, ObservableSum observable,
                EvalMode mode = ExactMode{});

  bool exact() const { return std::holds_alternative<ExactMode>(mode); }
  int num_params() const { return ansatz.num_params(); }
  /// Copy whose shot stream is re-rooted at `seed` (no-op in exact mode).
  ObjectiveSpec reseeded(std::uint64_t seed) const;
};

/// Cost accounting: `samples` counts objective evaluations (one per theta
/// point), `queries` counts backend round trips, `shots` counts simulated
/// measurements.
struct EvalLedger {
  std::uint64_t samples = 0;
  std::uint64_t queries = 0;
  std::uint64_t shots = 0;

  EvalLedger& operator+=(const EvalLedger& other);
  friend bool operator==(const EvalLedger&, const EvalLedger&) = default;
};

/// Pure evaluation used by the public entry points. In shots mode term j of
/// point `stream_index` draws from derive_seed(seed, stream_index, j).
double evaluate_stream(const ObjectiveSpec& spec, std::span<const double> theta,
                       std::uint64_t stream_index,
                       std::uint64_t* shots_used = nullptr);

/// One sample, one query.
double evaluate(const ObjectiveSpec& spec, std::span<const double> theta,
                EvalLedger& ledger);

/// All points in a single query; point i uses stream i, so results do not
/// depend on evaluation order. Throws on an empty batch.
std::vector<double> evaluate_batch(const ObjectiveSpec& spec,
                                   const std::vector<Point>& thetas,
                                   EvalLedger& ledger);

}  // namespace qsr
