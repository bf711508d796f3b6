#include "gframe/linalg.hpp"

#include <algorithm>

#include "gframe/errors.hpp"

namespace gframe::linalg {
namespace {

Eigen::BDCSVD<Matrix> full_svd(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  return svd;
}

Index count_above(const RealVector& sv, double threshold) {
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++r;
  }
  return r;
}

}  // namespace

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::BDCSVD<Matrix> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  return svd.singularValues();
}

double spectral_norm(const Matrix& a) {
  const RealVector sv = singular_values(a);
  return sv.size() == 0 ? 0.0 : sv(0);
}

double min_singular_value_full(const Matrix& a) {
  if (a.cols() > a.rows()) return 0.0;
  const RealVector sv = singular_values(a);
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

double rank_threshold(const Matrix& a, double rel_tol) { return rel_tol * spectral_norm(a); }

Index numerical_rank(const Matrix& a, double rel_tol) {
  const RealVector sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  return count_above(sv, rel_tol * sv(0));
}

Index numerical_rank_abs(const Matrix& a, double abs_threshold) {
  return count_above(singular_values(a), abs_threshold);
}

Matrix range_basis_abs(const Matrix& a, double abs_threshold) {
  const auto svd = full_svd(a);
  const Index r = count_above(svd.singularValues(), abs_threshold);
  return svd.matrixU().leftCols(r);
}

Matrix range_basis(const Matrix& a, double rel_tol) { return range_basis_abs(a, rank_threshold(a, rel_tol)); }

Matrix kernel_basis_abs(const Matrix& a, double abs_threshold) {
  const auto svd = full_svd(a);
  const Index r = count_above(svd.singularValues(), abs_threshold);
  return svd.matrixV().rightCols(a.cols() - r);
}

Matrix kernel_basis(const Matrix& a, double rel_tol) {
  const RealVector sv = singular_values(a);
  const double threshold = sv.size() == 0 ? 0.0 : rel_tol * sv(0);
  return kernel_basis_abs(a, threshold);
}

Matrix projector(const Matrix& q, Index ambient_dim) {
  if (q.cols() == 0) return Matrix::Zero(ambient_dim, ambient_dim);
  return q * q.adjoint();
}

Matrix pseudo_inverse(const Matrix& a, double rel_tol) {
  const auto svd = full_svd(a);
  const RealVector& sv = svd.singularValues();
  const double threshold = sv.size() == 0 ? 0.0 : rel_tol * sv(0);
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) out += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

std::pair<double, double> hermitian_extremes(const Matrix& s) {
  const Matrix sym = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed to converge");
  const RealVector& ev = eig.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

double hermitian_defect(const Matrix& a) { return spectral_norm(a - a.adjoint()); }

double unitary_defect(const Matrix& a) {
  return spectral_norm(a.adjoint() * a - Matrix::Identity(a.cols(), a.cols()));
}

}  // namespace gframe::linalg
