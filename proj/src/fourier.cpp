#include "qsr/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>
#include <json.hpp>

namespace qsr {

FourierBasis::FourierBasis(std::vector<int> bandwidths,
                           std::vector<std::vector<int>> harmonics)
    : bandwidths_(std::move(bandwidths)), harmonics_(std::move(harmonics)) {
  if (bandwidths_.empty()) {
    throw std::invalid_argument("Fourier basis needs at least one dimension");
  }
  if (!harmonics_.empty() && harmonics_.size() != bandwidths_.size()) {
    throw std::invalid_argument("harmonic mask must cover every dimension");
  }
  for (std::size_t d = 0; d < bandwidths_.size(); ++d) {
    const int s = bandwidths_[d];
    if (s < 0) throw std::invalid_argument("bandwidths must be non-negative");
    std::vector<int> keep;
    if (harmonics_.empty()) {
      for (int k = 0; k <= s; ++k) keep.push_back(k);
    } else {
      keep = harmonics_[d];
      std::sort(keep.begin(), keep.end());
      keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
      if (keep.empty()) throw std::invalid_argument("empty harmonic mask");
      if (keep.front() < 0 || keep.back() > s) {
        throw std::invalid_argument("masked harmonic outside 0..S");
      }
      harmonics_[d] = keep;
    }
    std::vector<Fn> fns;
    for (int k : keep) {
      if (k == 0) {
        fns.push_back({0, false});
      } else {
        fns.push_back({k, false});
        fns.push_back({k, true});
      }
    }
    size_ *= fns.size();
    per_dim_.push_back(std::move(fns));
  }
}

void FourierBasis::factors(int dim, double t, std::vector<double>& out) const {
  const auto& fns = per_dim_[dim];
  out.resize(fns.size());
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const Fn& f = fns[i];
    if (f.k == 0) {
      out[i] = 1.0;
    } else {
      out[i] = f.is_sin ? std::sin(f.k * t) : std::cos(f.k * t);
    }
  }
}

Eigen::VectorXd FourierBasis::row(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != dimension()) {
    throw std::invalid_argument("point dimension " +
                                std::to_string(theta.size()) +
                                " does not match basis dimension " +
                                std::to_string(dimension()));
  }
  Eigen::VectorXd out(size_);
  out[0] = 1.0;
  std::size_t filled = 1;
  std::vector<double> f;
  for (int d = 0; d < dimension(); ++d) {
    factors(d, theta[d], f);
    // Expand in place from the back so that earlier dimensions vary slowest.
    for (std::size_t i = filled; i-- > 0;) {
      const double base = out[i];
      for (std::size_t j = 0; j < f.size(); ++j) out[i * f.size() + j] = base * f[j];
    }
    filled *= f.size();
  }
  return out;
}

std::string FourierBasis::label(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("basis index out of range");
  std::vector<std::string> parts(dimension());
  for (int d = dimension() - 1; d >= 0; --d) {
    const auto& fns = per_dim_[d];
    const Fn& f = fns[index % fns.size()];
    index /= fns.size();
    parts[d] = f.k == 0 ? "1" : (f.is_sin ? "sin" : "cos") + std::to_string(f.k);
  }
  std::string out = parts[0];
  for (int d = 1; d < dimension(); ++d) out += "*" + parts[d];
  return out;
}

std::size_t nyquist_sample_count(std::span<const int> bandwidths) {
  std::size_t t = 1;
  for (int s : bandwidths) {
    if (s < 0) throw std::invalid_argument("bandwidths must be non-negative");
    t *= static_cast<std::size_t>(2 * s + 1);
  }
  return t;
}

std::vector<Point> uniform_lattice(std::span<const int> points_per_axis) {
  if (points_per_axis.empty()) {
    throw std::invalid_argument("lattice needs at least one axis");
  }
  const double pi = std::numbers::pi;
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (int m : points_per_axis) {
    if (m < 1) throw std::invalid_argument("need at least one point per axis");
    std::vector<double> axis(m);
    for (int i = 0; i < m; ++i) axis[i] = -pi + 2 * pi * (i + 1) / m;
    axes.push_back(std::move(axis));
    total *= static_cast<std::size_t>(m);
  }
  std::vector<Point> points;
  points.reserve(total);
  const std::size_t n = axes.size();
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t p = 0; p < total; ++p) {
    Point pt(n);
    for (std::size_t d = 0; d < n; ++d) pt[d] = axes[d][idx[d]];
    points.push_back(std::move(pt));
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < axes[d].size()) break;
      idx[d] = 0;
    }
  }
  return points;
}

std::vector<Point> nyquist_lattice(std::span<const int> bandwidths) {
  std::vector<int> m;
  for (int s : bandwidths) {
    if (s < 0) throw std::invalid_argument("bandwidths must be non-negative");
    m.push_back(2 * s + 1);
  }
  return uniform_lattice(m);
}

Eigen::MatrixXd design_matrix(const std::vector<Point>& points,
                              const FourierBasis& basis) {
  Eigen::MatrixXd f(points.size(), basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    f.row(i) = basis.row(points[i]).transpose();
  }
  return f;
}

FourierModel::FourierModel(FourierBasis basis, Eigen::VectorXd coefficients,
                           ModelMetadata metadata)
    : basis_(std::move(basis)),
      coefficients_(std::move(coefficients)),
      metadata_(std::move(metadata)) {
  if (static_cast<std::size_t>(coefficients_.size()) != basis_.size()) {
    throw std::invalid_argument("coefficient count does not match basis size");
  }
  if (!coefficients_.allFinite()) {
    throw std::invalid_argument("model coefficients must be finite");
  }
}

double FourierModel::operator()(std::span<const double> theta) const {
  return coefficients_.dot(basis_.row(theta));
}

FourierModel FourierModel::scaled(double alpha) const {
  return FourierModel(basis_, alpha * coefficients_, metadata_);
}

FourierModel fit(const SampleSet& samples, const FourierBasis& basis) {
  if (samples.points.empty()) throw std::invalid_argument("no samples to fit");
  if (samples.points.size() != samples.values.size()) {
    throw std::invalid_argument("sample points and values differ in length");
  }
  const Eigen::MatrixXd f = design_matrix(samples.points, basis);
  const Eigen::Map<const Eigen::VectorXd> h(samples.values.data(),
                                            samples.values.size());

  // Minimum-norm least squares; rank-deficient systems keep the smallest c.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  const auto cutoff_scale = static_cast<double>(std::max(f.rows(), f.cols()));
  cod.setThreshold(cutoff_scale * std::numeric_limits<double>::epsilon());
  cod.compute(f);
  const Eigen::VectorXd c = cod.solve(h);

  ModelMetadata meta;
  meta.sample_count = samples.points.size();
  meta.rank = static_cast<std::size_t>(cod.rank());
  meta.residual_norm = (f * c - h).norm();
  meta.mode = samples.mode;
  meta.shots = samples.shots;
  meta.seed = samples.seed;
  return FourierModel(basis, c, meta);
}

FourierModel fit_undersampled(const SampleSet& samples,
                              std::vector<int> reduced_bandwidths) {
  FourierModel m = fit(samples, FourierBasis(std::move(reduced_bandwidths)));
  ModelMetadata meta = m.metadata();
  meta.undersampled = true;
  return FourierModel(m.basis(), m.coefficients(), meta);
}

double evaluate_model(const FourierModel& model, std::span<const double> theta) {
  return model(theta);
}

std::string model_to_json(const FourierModel& model) {
  nlohmann::json doc;
  doc["bandwidths"] = model.bandwidths();
  const auto& c = model.coefficients();
  doc["coefficients"] = std::vector<double>(c.data(), c.data() + c.size());
  if (!model.basis().harmonics().empty()) {
    doc["harmonics"] = model.basis().harmonics();
  }
  const auto& m = model.metadata();
  doc["metadata"] = {{"sample_count", m.sample_count},
                     {"rank", m.rank},
                     {"residual_norm", m.residual_norm},
                     {"undersampled", m.undersampled},
                     {"mode", m.mode},
                     {"shots", m.shots},
                     {"seed", m.seed}};
  return doc.dump(2);
}

FourierModel model_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    auto bandwidths = doc.at("bandwidths").get<std::vector<int>>();
    std::vector<std::vector<int>> harmonics;
    if (doc.contains("harmonics")) {
      harmonics = doc["harmonics"].get<std::vector<std::vector<int>>>();
    }
    const auto coeffs = doc.at("coefficients").get<std::vector<double>>();
    ModelMetadata meta;
    if (doc.contains("metadata")) {
      const auto& m = doc["metadata"];
      meta.sample_count = m.value("sample_count", std::size_t{0});
      meta.rank = m.value("rank", std::size_t{0});
      meta.residual_norm = m.value("residual_norm", 0.0);
      meta.undersampled = m.value("undersampled", false);
      meta.mode = m.value("mode", std::string("exact"));
      meta.shots = m.value("shots", std::uint64_t{0});
      meta.seed = m.value("seed", std::uint64_t{0});
    }
    return FourierModel(
        FourierBasis(std::move(bandwidths), std::move(harmonics)),
        Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size()), meta);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const FourierModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model to " + path);
  out << model_to_json(model) << '\n';
}

FourierModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace qsr
