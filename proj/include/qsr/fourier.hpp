#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsr/objective.hpp"

namespace qsr {

/// Tensor-product real Fourier basis on ]-pi, pi]^n.
///
/// Per dimension the functions are ordered [1, cos t, sin t, cos 2t, sin 2t,
/// ...] up to the bandwidth S_j. Multi-dimensional functions are enumerated
/// dimension-major: dimension 0 varies slowest. This order is also the
/// coefficient layout of persisted models, so it must not change.
///
/// An optional harmonic mask keeps only selected k per dimension (k = 0 is
/// the constant term); with no mask every k in 0..S_j is kept and the basis
/// has T = prod(2 S_j + 1) functions.
class FourierBasis {
 public:
  explicit FourierBasis(std::vector<int> bandwidths,
                        std::vector<std::vector<int>> harmonics = {});

  int dimension() const { return static_cast<int>(bandwidths_.size()); }
  const std::vector<int>& bandwidths() const { return bandwidths_; }
  /// Empty when every harmonic is retained.
  const std::vector<std::vector<int>>& harmonics() const { return harmonics_; }
  std::size_t size() const { return size_; }

  /// Row of basis values at theta (length size()).
  Eigen::VectorXd row(std::span<const double> theta) const;

  /// Human-readable label of function `index`, e.g. "cos1*sin2".
  std::string label(std::size_t index) const;

  friend bool operator==(const FourierBasis&, const FourierBasis&) = default;

 private:
  struct Fn {
    int k;
    bool is_sin;
    friend bool operator==(const Fn&, const Fn&) = default;
  };

  // Per-dimension factor values at one coordinate.
  void factors(int dim, double t, std::vector<double>& out) const;

  std::vector<int> bandwidths_;
  std::vector<std::vector<int>> harmonics_;
  std::vector<std::vector<Fn>> per_dim_;
  std::size_t size_ = 1;
};

/// prod(2 S_j + 1)
std::size_t nyquist_sample_count(std::span<const int> bandwidths);

/// Cartesian product of uniform grids with `points_per_axis[j]` points,
/// t_i = -pi + 2 pi (i + 1) / M, dimension 0 slowest.
std::vector<Point> uniform_lattice(std::span<const int> points_per_axis);

/// uniform_lattice with 2 S_j + 1 points per axis.
std::vector<Point> nyquist_lattice(std::span<const int> bandwidths);

Eigen::MatrixXd design_matrix(const std::vector<Point>& points,
                              const FourierBasis& basis);

struct SampleSet {
  std::vector<Point> points;
  std::vector<double> values;
  std::string mode = "exact";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

struct ModelMetadata {
  std::size_t sample_count = 0;
  std::size_t rank = 0;
  double residual_norm = 0.0;
  bool undersampled = false;
  std::string mode = "exact";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Fitted trigonometric model: coefficients in FourierBasis order.
class FourierModel {
 public:
  FourierModel(FourierBasis basis, Eigen::VectorXd coefficients,
               ModelMetadata metadata = {});

  const FourierBasis& basis() const { return basis_; }
  const std::vector<int>& bandwidths() const { return basis_.bandwidths(); }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  const ModelMetadata& metadata() const { return metadata_; }
  int dimension() const { return basis_.dimension(); }

  double operator()(std::span<const double> theta) const;

  /// Same basis, coefficients multiplied by alpha.
  FourierModel scaled(double alpha) const;

 private:
  FourierBasis basis_;
  Eigen::VectorXd coefficients_;
  ModelMetadata metadata_;
};

/// Minimum-norm least-squares solution of F c = h by complete orthogonal
/// decomposition. Pivots below max(rows, T) * eps of the largest count as zero.
FourierModel fit(const SampleSet& samples, const FourierBasis& basis);

/// fit() with a deliberately reduced frequency cutoff; flagged undersampled.
FourierModel fit_undersampled(const SampleSet& samples,
                              std::vector<int> reduced_bandwidths);

double evaluate_model(const FourierModel& model, std::span<const double> theta);

/// {"bandwidths": [...], "coefficients": [...], "metadata": {...}}
/// plus "harmonics" when a mask is in use.
std::string model_to_json(const FourierModel& model);
FourierModel model_from_json(const std::string& text);
void save_model(const FourierModel& model, const std::string& path);
FourierModel load_model(const std::string& path);

}  // namespace qsr
