#pragma once

// Small dense helpers shared by the modules. Every rank decision takes a relative
// tolerance: a singular value counts as nonzero when it exceeds rel_tol * sigma_max.

#include <utility>

#include "gframe/types.hpp"

namespace gframe::linalg {

RealVector singular_values(const Matrix& a);
double spectral_norm(const Matrix& a);

/// Smallest singular value counting dimension deficit: 0 whenever a has more columns than rows.
double min_singular_value_full(const Matrix& a);

/// Threshold below which singular values of a are treated as zero.
double rank_threshold(const Matrix& a, double rel_tol);

Index numerical_rank(const Matrix& a, double rel_tol);
Index numerical_rank_abs(const Matrix& a, double abs_threshold);

/// Orthonormal basis (as columns) of Ran a.
Matrix range_basis(const Matrix& a, double rel_tol);
Matrix range_basis_abs(const Matrix& a, double abs_threshold);

/// Orthonormal basis (as columns) of Ker a.
Matrix kernel_basis(const Matrix& a, double rel_tol);
Matrix kernel_basis_abs(const Matrix& a, double abs_threshold);

/// Orthogonal projector onto the span of the orthonormal columns of q.
Matrix projector(const Matrix& q, Index ambient_dim);

Matrix pseudo_inverse(const Matrix& a, double rel_tol);

/// Smallest and largest eigenvalue of a Hermitian matrix.
std::pair<double, double> hermitian_extremes(const Matrix& s);

/// Largest deviation of a from being Hermitian, ‖a − a*‖₂.
double hermitian_defect(const Matrix& a);

/// ‖a*a − I‖₂.
double unitary_defect(const Matrix& a);

}  // namespace gframe::linalg
