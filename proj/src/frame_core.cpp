#include "gframe/frame_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gframe/errors.hpp"
#include "gframe/linalg.hpp"

namespace gframe {

Vector synthesis_apply(const GFrameFamily& family, const CoefficientFamily& coeffs) {
  if (coeffs.blocks.size() != family.size()) {
    throw DimensionError("coefficient family has " + std::to_string(coeffs.blocks.size()) + " blocks, family has " +
                         std::to_string(family.size()) + " members");
  }
  Vector out = Vector::Zero(family.dom_dim());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Matrix& op = family[i].matrix();
    if (coeffs.blocks[i].size() != op.rows()) throw DimensionError("coefficient block length mismatch", i);
    out.noalias() += op.adjoint() * coeffs.blocks[i];
  }
  return out;
}

CoefficientFamily analysis_apply(const GFrameFamily& family, const Vector& f) {
  if (f.size() != family.dom_dim()) throw DimensionError("vector length does not match domain dimension");
  CoefficientFamily out;
  out.blocks.reserve(family.size());
  for (const auto& m : family.members()) out.blocks.emplace_back(m.matrix() * f);
  return out;
}

Operator frame_operator(const GFrameFamily& family) {
  const Index n = family.dom_dim();
  Matrix s = Matrix::Zero(n, n);
  for (const auto& m : family.members()) s.noalias() += m.matrix().adjoint() * m.matrix();
  return Operator(std::move(s));
}

FrameBounds frame_bounds(const GFrameFamily& family) {
  const auto [lo, hi] = linalg::hermitian_extremes(frame_operator(family).matrix());
  // S_Λ is positive semidefinite; negative eigenvalues are rounding.
  return {std::max(lo, 0.0), std::max(hi, 0.0)};
}

FrameBounds riesz_bounds(const GFrameFamily& family) {
  const Matrix w = family.stacked_synthesis();
  const RealVector sv = linalg::singular_values(w);
  const double hi = sv(0) * sv(0);
  if (w.cols() > w.rows()) return {0.0, hi};
  const double lo = sv(sv.size() - 1);
  return {lo * lo, hi};
}

GFrameFamily canonical_dual(const GFrameFamily& family, double tol) {
  const Operator s = frame_operator(family);
  const auto [lo, hi] = linalg::hermitian_extremes(s.matrix());
  if (!(lo > tol * hi)) throw PreconditionError("canonical dual requires a g-frame; lower frame bound too small", lo);
  const Eigen::LDLT<Matrix> ldlt(s.matrix());
  if (ldlt.info() != Eigen::Success) throw NumericalError("frame operator factorization failed");
  const Matrix s_inv = ldlt.solve(Matrix::Identity(s.dom_dim(), s.dom_dim()));
  std::vector<Operator> dual;
  dual.reserve(family.size());
  for (const auto& m : family.members()) dual.emplace_back(m.matrix() * s_inv);
  return GFrameFamily(std::move(dual), family.extent());
}

Operator mixed_frame_operator(const GFrameFamily& left, const GFrameFamily& right) {
  if (left.size() != right.size()) throw DimensionError("mixed frame operator needs equal member counts");
  if (left.dom_dim() != right.dom_dim()) throw DimensionError("mixed frame operator needs equal domain dimensions");
  const Index n = left.dom_dim();
  Matrix s = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i].cod_dim() != right[i].cod_dim()) throw DimensionError("codomain dimensions differ", i);
    s.noalias() += left[i].matrix().adjoint() * right[i].matrix();
  }
  return Operator(std::move(s));
}

Classification classify(const GFrameFamily& family, double tol) {
  if (!(tol > 0.0)) throw DomainError("classification tolerance must be positive");
  Classification c;
  c.tolerance_used = tol;
  c.bounds = frame_bounds(family);
  c.riesz = riesz_bounds(family);

  const Matrix a = family.stacked_analysis();
  const Index n = family.dom_dim();
  const Index total = a.rows();
  // Upper bound is σ_max² of the stacked matrix; it is the common scale for every threshold.
  const double scale = c.bounds.upper;

  c.is_g_bessel = std::isfinite(c.bounds.upper);
  c.is_g_frame = c.bounds.lower > tol * scale;
  c.is_g_complete = total >= n && linalg::numerical_rank(a, tol) == n;
  c.is_g_riesz_sequence = c.riesz.lower > tol * scale;
  c.is_g_riesz_basis = c.is_g_complete && c.is_g_riesz_sequence;

  c.gram_defect = linalg::spectral_norm(a * a.adjoint() - Matrix::Identity(total, total));
  c.parseval_defect = linalg::spectral_norm(a.adjoint() * a - Matrix::Identity(n, n));
  c.is_g_orthonormal = c.is_g_frame && c.gram_defect <= tol && c.parseval_defect <= tol &&
                       std::abs(c.bounds.lower - 1.0) <= tol && std::abs(c.bounds.upper - 1.0) <= tol;
  return c;
}

std::vector<Vector> lift_to_frame(const GFrameFamily& family, const std::vector<Matrix>& onbs) {
  if (onbs.size() != family.size()) throw DimensionError("need one orthonormal basis per member");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(family.total_cod_dim()));
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Matrix& e = onbs[i];
    const Index m = family[i].cod_dim();
    if (e.rows() != m || e.cols() != m) throw DimensionError("basis matrix does not match member codomain", i);
    const double defect = linalg::unitary_defect(e);
    if (defect > 1e-10) throw PreconditionError("basis matrix for member " + std::to_string(i) + " is not unitary", defect);
    const Matrix lifted = family[i].matrix().adjoint() * e;
    for (Index j = 0; j < m; ++j) out.emplace_back(lifted.col(j));
  }
  return out;
}

FrameBounds vector_frame_bounds(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw DimensionError("empty vector system");
  const Index n = vectors.front().size();
  Matrix s = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != n) throw DimensionError("vector lengths differ", k);
    s.noalias() += vectors[k] * vectors[k].adjoint();
  }
  const auto [lo, hi] = linalg::hermitian_extremes(s);
  return {std::max(lo, 0.0), std::max(hi, 0.0)};
}

GFrameFamily frame_to_gframe(const std::vector<Vector>& vectors, Extent extent) {
  if (vectors.empty()) throw DimensionError("empty vector system");
  const Index n = vectors.front().size();
  std::vector<Operator> members;
  members.reserve(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != n) throw DimensionError("vector lengths differ", k);
    members.emplace_back(Matrix(vectors[k].adjoint()));
  }
  return GFrameFamily(std::move(members), extent);
}

Operator transition_operator(const GFrameFamily& family, const GFrameFamily& onb_family, double tol) {
  if (family.size() != onb_family.size()) throw DimensionError("transition operator needs equal member counts");
  if (family.dom_dim() != onb_family.dom_dim()) throw DimensionError("transition operator needs equal domains");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].cod_dim() != onb_family[i].cod_dim()) throw DimensionError("codomain dimensions differ", i);
  }
  const Classification c = classify(onb_family, tol);
  if (!c.is_g_orthonormal) {
    throw PreconditionError("reference family is not g-orthonormal", std::max(c.gram_defect, c.parseval_defect));
  }
  const Matrix a_theta = onb_family.stacked_analysis();
  const Matrix a_lambda = family.stacked_analysis();
  // Λ = Θ V*  ⇔  A_Λ = A_Θ V*; A_Θ is unitary for a g-orthonormal family.
  const Matrix v_adj = a_theta.adjoint() * a_lambda;
  const double scale = std::max(1.0, linalg::spectral_norm(a_lambda));
  const double residual = linalg::spectral_norm(a_lambda - a_theta * v_adj) / scale;
  if (residual > tol) throw NoExactSolutionError("no exact transition operator", residual);
  return Operator(v_adj.adjoint());
}

}  // namespace gframe
