#include "qsr/objective.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

namespace qsr {

ObjectiveSpec::ObjectiveSpec(Ansatz a, ObservableSum obs, EvalMode m)
    : ansatz(std::move(a)), observable(std::move(obs)), mode(m) {
  if (ansatz.num_qubits() != observable.num_qubits()) {
    throw std::invalid_argument("ansatz acts on " +
                                std::to_string(ansatz.num_qubits()) +
                                " qubits but observable on " +
                                std::to_string(observable.num_qubits()));
  }
  if (const auto* s = std::get_if<ShotsMode>(&mode); s && s->shots == 0) {
    throw std::invalid_argument("shots must be positive");
  }
}

ObjectiveSpec ObjectiveSpec::reseeded(std::uint64_t seed) const {
  ObjectiveSpec out = *this;
  if (auto* s = std::get_if<ShotsMode>(&out.mode)) s->seed = seed;
  return out;
}

EvalLedger& EvalLedger::operator+=(const EvalLedger& other) {
  samples += other.samples;
  queries += other.queries;
  shots += other.shots;
  return *this;
}

double evaluate_stream(const ObjectiveSpec& spec, std::span<const double> theta,
                       std::uint64_t stream_index, std::uint64_t* shots_used) {
  if (static_cast<int>(theta.size()) != spec.num_params()) {
    throw std::invalid_argument("objective expects " +
                                std::to_string(spec.num_params()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
  const StateVector state = spec.ansatz.prepare(theta);
  if (spec.exact()) {
    if (shots_used) *shots_used = 0;
    return exact_energy(state, spec.observable);
  }
  const auto& mode = std::get<ShotsMode>(spec.mode);
  const auto& terms = spec.observable.terms();
  double value = 0.0;
  std::uint64_t used = 0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (terms[j].pauli.is_identity()) {
      value += terms[j].weight;
      continue;
    }
    const auto seed = derive_seed(mode.seed, stream_index, j);
    value += terms[j].weight *
             sampled_expectation(state, terms[j].pauli, mode.shots, seed);
    used += mode.shots;
  }
  if (shots_used) *shots_used = used;
  return value;
}

double evaluate(const ObjectiveSpec& spec, std::span<const double> theta,
                EvalLedger& ledger) {
  std::uint64_t used = 0;
  const double v = evaluate_stream(spec, theta, 0, &used);
  ledger += EvalLedger{1, 1, used};
  return v;
}

std::vector<double> evaluate_batch(const ObjectiveSpec& spec,
                                   const std::vector<Point>& thetas,
                                   EvalLedger& ledger) {
  if (thetas.empty()) throw std::invalid_argument("empty evaluation batch");
  for (const auto& t : thetas) {
    if (static_cast<int>(t.size()) != spec.num_params()) {
      throw std::invalid_argument("batch point has wrong dimension");
    }
  }
  const std::size_t count = thetas.size();
  std::vector<double> values(count);
  std::vector<std::uint64_t> used(count, 0);

  // Each worker owns a strided subset; streams are keyed by point index.
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, count / 4));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t first) {
    try {
      for (std::size_t i = first; i < count; i += workers) {
        values[i] = evaluate_stream(spec, thetas[i], i, &used[i]);
      }
    } catch (...) {
      errors[first] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalLedger delta{count, 1, 0};
  for (auto u : used) delta.shots += u;
  ledger += delta;
  return values;
}

}  // namespace qsr
