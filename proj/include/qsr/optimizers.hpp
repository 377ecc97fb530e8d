#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qsr/fourier.hpp"
#include "qsr/objective.hpp"

namespace qsr {

/// Maps an angle onto ]-pi, pi].
double wrap_angle(double t);
Point wrap_point(std::span<const double> theta);

struct OptimizationResult {
  Point theta_min;
  double value_min = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;
  std::vector<std::pair<Point, double>> trace;
};

struct NelderMeadOptions {
  std::uint64_t max_evals = 1000;
  double xtol = 1e-8;
  double ftol = 1e-10;
  /// Added to ftol as a multiple of |best value|.
  double ftol_relative = 0.0;
  double initial_step = 0.25;
  /// When set, initial simplex steps get seeded random signs.
  std::optional<std::uint64_t> seed;
  /// Wrap every evaluated point onto ]-pi, pi]^n.
  bool periodic = true;
  bool record_trace = false;
};

using ScalarObjective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5. Converges when both the simplex diameter (max-norm from the
/// best vertex) is <= xtol and the value spread is <= ftol + ftol_relative *
/// |best|. Running out of max_evals returns converged = false.
OptimizationResult nelder_mead_minimize(const ScalarObjective& f,
                                        std::span<const double> theta0,
                                        const NelderMeadOptions& options = {});

/// Dense scan over ]-pi, pi]^n, best point kept on strict improvement only so
/// ties resolve to the lexicographically smallest theta, then an optional
/// Nelder-Mead polish. grid_per_axis = 0 uses 8 (2 S_j + 1) points per axis.
OptimizationResult regression_global_minimize(const FourierModel& model,
                                              int grid_per_axis = 0,
                                              bool refine = true);

struct VqeOptions {
  NelderMeadOptions nm;

  /// Defaults for the spec's mode: tight in exact mode, lax when noisy.
  static VqeOptions for_mode(const ObjectiveSpec& spec);
};

/// Nelder-Mead on the objective. In shots mode evaluation k draws stream k,
/// so every call resamples. Each evaluation is one sample and one query.
OptimizationResult vqe_run(const ObjectiveSpec& spec,
                           std::span<const double> theta0,
                           const VqeOptions& options, EvalLedger& ledger);

struct QsrOptions {
  std::optional<std::vector<int>> bandwidth_override;
  /// Points per axis = ceil(factor * (2 S_j + 1)).
  double oversample_factor = 1.0;
  int grid_per_axis = 0;
  bool refine = true;
};

struct QsrResult {
  FourierModel model;
  OptimizationResult optimum;
  EvalLedger ledger;
  SampleSet samples;
};

/// Samples the objective on the (optionally reduced or oversampled) lattice
/// in one batch, fits the Fourier model and minimizes it classically.
QsrResult qsr_run(const ObjectiveSpec& spec, const QsrOptions& options = {});

}  // namespace qsr
