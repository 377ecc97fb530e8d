#include "qsr/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qsr {

namespace {

constexpr double kPi = std::numbers::pi;

struct Vertex {
  Point x;
  double f;
};

// Thrown internally when the evaluation budget runs out.
struct BudgetExhausted {};

}  // namespace

double wrap_angle(double t) {
  if (t > -kPi && t <= kPi) return t;
  double r = std::fmod(t + kPi, 2 * kPi);
  if (r <= 0) r += 2 * kPi;
  return r - kPi;
}

Point wrap_point(std::span<const double> theta) {
  Point out(theta.begin(), theta.end());
  for (auto& t : out) t = wrap_angle(t);
  return out;
}

OptimizationResult nelder_mead_minimize(const ScalarObjective& f,
                                        std::span<const double> theta0,
                                        const NelderMeadOptions& opt) {
  const std::size_t n = theta0.size();
  if (n == 0) throw std::invalid_argument("Nelder-Mead needs n >= 1");
  if (opt.max_evals == 0) throw std::invalid_argument("max_evals must be >= 1");

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  OptimizationResult result;
  Vertex best{Point(theta0.begin(), theta0.end()),
              std::numeric_limits<double>::infinity()};

  auto eval = [&](Point x) -> Vertex {
    if (result.evaluations >= opt.max_evals) throw BudgetExhausted{};
    if (opt.periodic) x = wrap_point(x);
    const double v = f(x);
    ++result.evaluations;
    if (opt.record_trace) result.trace.emplace_back(x, v);
    if (v < best.f) best = {x, v};
    return {std::move(x), v};
  };

  std::vector<Vertex> simplex;
  try {
    simplex.push_back(eval(Point(theta0.begin(), theta0.end())));
    std::mt19937_64 rng(opt.seed.value_or(0));
    for (std::size_t i = 0; i < n; ++i) {
      Point x = simplex[0].x;
      double step = opt.initial_step;
      if (opt.seed && (rng() & 1u)) step = -step;
      x[i] += step;
      simplex.push_back(eval(std::move(x)));
    }

    auto combine = [&](const Point& a, const Point& b, double t) {
      // a + t (b - a)
      Point out(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = a[k] + t * (b[k] - a[k]);
      return out;
    };

    while (true) {
      std::stable_sort(simplex.begin(), simplex.end(),
                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

      // Distances are measured on the wrapped coordinates the vertices carry;
      // wrap the difference so vertices straddling the seam count as close.
      double xspread = 0.0, fspread = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          double d = simplex[i].x[k] - simplex[0].x[k];
          if (opt.periodic) d = wrap_angle(d);
          xspread = std::max(xspread, std::abs(d));
        }
        fspread = std::max(fspread, std::abs(simplex[i].f - simplex[0].f));
      }
      const double ftol = opt.ftol + opt.ftol_relative * std::abs(simplex[0].f);
      if (xspread <= opt.xtol && fspread <= ftol) {
        result.converged = true;
        break;
      }

      // Work in an unwrapped chart centred on the best vertex.
      std::vector<Point> local(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        local[i] = simplex[i].x;
        if (opt.periodic && i > 0) {
          for (std::size_t k = 0; k < n; ++k) {
            local[i][k] = simplex[0].x[k] +
                          wrap_angle(simplex[i].x[k] - simplex[0].x[k]);
          }
        }
      }
      Point centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) centroid[k] += local[i][k] / n;
      }
      const Point& worst = local[n];

      Vertex xr = eval(combine(centroid, worst, -kReflect));
      if (xr.f < simplex[0].f) {
        Vertex xe = eval(combine(centroid, worst, -kReflect * kExpand));
        simplex[n] = (xe.f < xr.f) ? std::move(xe) : std::move(xr);
        continue;
      }
      if (xr.f < simplex[n - 1].f) {
        simplex[n] = std::move(xr);
        continue;
      }
      bool do_shrink = false;
      if (xr.f < simplex[n].f) {
        Vertex xc = eval(combine(centroid, worst, -kReflect * kContract));
        if (xc.f <= xr.f) {
          simplex[n] = std::move(xc);
        } else {
          do_shrink = true;
        }
      } else {
        Vertex xc = eval(combine(centroid, worst, kContract));
        if (xc.f < simplex[n].f) {
          simplex[n] = std::move(xc);
        } else {
          do_shrink = true;
        }
      }
      if (do_shrink) {
        for (std::size_t i = 1; i <= n; ++i) {
          simplex[i] = eval(combine(local[0], local[i], kShrink));
        }
      }
    }
  } catch (const BudgetExhausted&) {
    result.converged = false;
  }

  result.theta_min = best.x;
  result.value_min = best.f;
  return result;
}

OptimizationResult regression_global_minimize(const FourierModel& model,
                                              int grid_per_axis, bool refine) {
  const auto& s = model.bandwidths();
  const int s_max = *std::max_element(s.begin(), s.end());
  std::vector<int> grid(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    grid[j] = grid_per_axis > 0 ? grid_per_axis : 8 * (2 * s[j] + 1);
  }
  if (grid_per_axis > 0 && grid_per_axis < 2 * s_max + 1) {
    throw std::invalid_argument("grid_per_axis must be at least 2*max(S)+1");
  }

  const auto points = uniform_lattice(grid);
  OptimizationResult result;
  result.value_min = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double v = model(p);
    if (v < result.value_min) {
      result.value_min = v;
      result.theta_min = p;
    }
  }
  result.evaluations = points.size();
  result.converged = true;
  if (!refine) return result;

  NelderMeadOptions nm;
  nm.max_evals = 20000;
  nm.xtol = 1e-11;
  nm.ftol = std::numeric_limits<double>::infinity();
  nm.initial_step = kPi / *std::max_element(grid.begin(), grid.end());
  const auto polish = nelder_mead_minimize(
      [&](std::span<const double> t) { return model(t); }, result.theta_min, nm);
  result.evaluations += polish.evaluations;
  result.converged = polish.converged;
  if (polish.value_min < result.value_min) {
    result.value_min = polish.value_min;
    result.theta_min = polish.theta_min;
  }
  return result;
}

VqeOptions VqeOptions::for_mode(const ObjectiveSpec& spec) {
  VqeOptions o;
  if (spec.exact()) {
    o.nm.xtol = 1e-6;
    o.nm.ftol = 1e-6;
  } else {
    o.nm.xtol = 1e-2;
    o.nm.ftol = 0.0;
    o.nm.ftol_relative = 1e-2;
  }
  return o;
}

OptimizationResult vqe_run(const ObjectiveSpec& spec,
                           std::span<const double> theta0,
                           const VqeOptions& options, EvalLedger& ledger) {
  if (static_cast<int>(theta0.size()) != spec.num_params()) {
    throw std::invalid_argument("theta0 has wrong dimension");
  }
  std::uint64_t stream = 0;
  auto objective = [&](std::span<const double> theta) {
    std::uint64_t used = 0;
    const double v = evaluate_stream(spec, theta, stream++, &used);
    ledger += EvalLedger{1, 1, used};
    return v;
  };
  return nelder_mead_minimize(objective, theta0, options.nm);
}

QsrResult qsr_run(const ObjectiveSpec& spec, const QsrOptions& options) {
  if (!(options.oversample_factor >= 1.0)) {
    throw std::invalid_argument("oversample_factor must be >= 1");
  }
  const auto& declared = spec.ansatz.bandwidths();
  std::vector<int> bandwidths = declared;
  bool undersampled = false;
  if (options.bandwidth_override) {
    bandwidths = *options.bandwidth_override;
    if (bandwidths.size() != declared.size()) {
      throw std::invalid_argument("bandwidth override has wrong length");
    }
    for (std::size_t j = 0; j < declared.size(); ++j) {
      if (bandwidths[j] < 0) throw std::invalid_argument("negative bandwidth");
      undersampled = undersampled || bandwidths[j] < declared[j];
    }
  }

  std::vector<int> per_axis;
  for (int s : bandwidths) {
    per_axis.push_back(static_cast<int>(
        std::ceil(options.oversample_factor * (2 * s + 1) - 1e-9)));
  }

  SampleSet samples;
  samples.points = uniform_lattice(per_axis);
  EvalLedger ledger;
  samples.values = evaluate_batch(spec, samples.points, ledger);
  if (const auto* shots = std::get_if<ShotsMode>(&spec.mode)) {
    samples.mode = "shots";
    samples.shots = shots->shots;
    samples.seed = shots->seed;
  }

  FourierModel model = undersampled
                           ? fit_undersampled(samples, bandwidths)
                           : fit(samples, FourierBasis(bandwidths));
  auto optimum =
      regression_global_minimize(model, options.grid_per_axis, options.refine);
  return QsrResult{std::move(model), std::move(optimum), ledger,
                   std::move(samples)};
}

}  // namespace qsr
