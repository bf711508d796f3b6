#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace gframe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default relative tolerance for rank and positivity decisions.
inline constexpr double kDefaultTol = 1e-9;

/// Default truncation depth for infinite families.
inline constexpr int kDefaultDepth = 64;

/// A bounded operator H -> K realized as a dense complex matrix (rows = dim K, cols = dim H).
/// Entries are always finite and both dimensions positive.
class Operator {
 public:
  explicit Operator(Matrix entries);

  static Operator identity(Index n);
  static Operator zero(Index cod_dim, Index dom_dim);
  static Operator from_real(const Eigen::MatrixXd& entries);

  const Matrix& matrix() const noexcept { return entries_; }
  Index dom_dim() const noexcept { return entries_.cols(); }
  Index cod_dim() const noexcept { return entries_.rows(); }

  Operator adjoint() const;
  /// Spectral norm.
  double norm() const;

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  Matrix entries_;
};

/// Whether a family is the complete finite family or the first N members of an infinite one.
/// Shift-invariance and similar checks treat the last block differently for truncations.
enum class Extent { explicit_finite, truncation };

/// Ordered, nonempty sequence of operators sharing a domain H; codomains K_i may differ.
class GFrameFamily {
 public:
  explicit GFrameFamily(std::vector<Operator> members, Extent extent = Extent::explicit_finite);

  const std::vector<Operator>& members() const noexcept { return members_; }
  const Operator& operator[](std::size_t i) const { return members_[i]; }
  std::size_t size() const noexcept { return members_.size(); }
  Index dom_dim() const noexcept { return members_.front().dom_dim(); }
  Extent extent() const noexcept { return extent_; }

  /// Sum of member codomain dimensions.
  Index total_cod_dim() const;
  /// The common codomain dimension, if every member shares one.
  std::optional<Index> shared_cod_dim() const;
  /// Row offset of member i inside the stacked analysis matrix.
  Index block_offset(std::size_t i) const;

  /// [Λ_1; Λ_2; ...; Λ_N], shape (Σ dim K_i) × dim H. Its adjoint is the synthesis matrix.
  Matrix stacked_analysis() const;
  /// [Λ_1* Λ_2* ... Λ_N*], shape dim H × (Σ dim K_i).
  Matrix stacked_synthesis() const;

  /// Members [first, last) as a new family with the same extent.
  GFrameFamily slice(std::size_t first, std::size_t last) const;

 private:
  std::vector<Operator> members_;
  Extent extent_;
};

/// Optimal lower/upper constants (A, B).
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Element {g_i} of the block sequence space; block i lives in K_i.
struct CoefficientFamily {
  std::vector<Vector> blocks;

  Vector concatenated() const;
  static CoefficientFamily split(const Vector& flat, const GFrameFamily& layout);
};

/// One recorded floating-point comparison: verdict is the outcome of comparing value with threshold.
struct Check {
  double value = 0.0;
  double threshold = 0.0;
  bool verdict = false;
};

inline Check check_less(double value, double threshold) { return {value, threshold, value < threshold}; }
inline Check check_less_equal(double value, double threshold) { return {value, threshold, value <= threshold}; }
inline Check check_greater(double value, double threshold) { return {value, threshold, value > threshold}; }

}  // namespace gframe
