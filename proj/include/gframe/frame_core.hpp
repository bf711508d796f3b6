#pragma once

// Canonical operators of a g-frame {Λ_i : H -> K_i}: synthesis/analysis, frame
// operator, optimal bounds, canonical dual, mixed operator, classification, and the
// bridges between g-frames and ordinary vector frames.

#include <vector>

#include "gframe/types.hpp"

namespace gframe {

/// Σ_i Λ_i* g_i.
Vector synthesis_apply(const GFrameFamily& family, const CoefficientFamily& coeffs);

/// {Λ_i f}_i.
CoefficientFamily analysis_apply(const GFrameFamily& family, const Vector& f);

/// S_Λ = Σ_i Λ_i* Λ_i.
Operator frame_operator(const GFrameFamily& family);

/// Extremal eigenvalues of S_Λ; the optimal g-frame constants.
FrameBounds frame_bounds(const GFrameFamily& family);

/// Squared extremal singular values of the stacked synthesis matrix; the optimal
/// g-Riesz constants. The lower constant is 0 whenever Σ dim K_i > dim H.
FrameBounds riesz_bounds(const GFrameFamily& family);

/// {Λ_i S_Λ⁻¹}. Throws PreconditionError carrying A_Λ when the family is not a g-frame.
GFrameFamily canonical_dual(const GFrameFamily& family, double tol = kDefaultTol);

/// S_ΛΘ = Σ_i Λ_i* Θ_i.
Operator mixed_frame_operator(const GFrameFamily& left, const GFrameFamily& right);

struct Classification {
  bool is_g_bessel = false;
  bool is_g_frame = false;
  bool is_g_complete = false;
  bool is_g_riesz_sequence = false;
  bool is_g_riesz_basis = false;
  bool is_g_orthonormal = false;
  FrameBounds bounds;
  FrameBounds riesz;
  /// ‖T_Λ* T_Λ − I‖₂ (biorthonormality) and ‖S_Λ − I‖₂ (Parseval).
  double gram_defect = 0.0;
  double parseval_defect = 0.0;
  double tolerance_used = kDefaultTol;
};

/// Thresholds are relative: tol scaled by the largest singular value involved.
Classification classify(const GFrameFamily& family, double tol = kDefaultTol);

/// {Λ_i* e_{i,j}} for per-member orthonormal bases given as unitary matrices (columns e_{i,j}).
std::vector<Vector> lift_to_frame(const GFrameFamily& family, const std::vector<Matrix>& onbs);

/// Frame bounds of a vector system {f_k}: extremal eigenvalues of Σ f_k f_k*.
FrameBounds vector_frame_bounds(const std::vector<Vector>& vectors);

/// Member i is the functional f ↦ ⟨f, f_i⟩, i.e. the 1×n row f_i*.
GFrameFamily frame_to_gframe(const std::vector<Vector>& vectors, Extent extent = Extent::explicit_finite);

/// V with Λ_i = Θ_i V* for every i, where onb_family = {Θ_i} is g-orthonormal.
Operator transition_operator(const GFrameFamily& family, const GFrameFamily& onb_family, double tol = kDefaultTol);

}  // namespace gframe
