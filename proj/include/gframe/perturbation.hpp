#pragma once

// Stability of g-Riesz sequences under perturbation.

#include <optional>

#include "gframe/frame_core.hpp"
#include "gframe/types.hpp"

namespace gframe {

struct PerturbationOptions {
  double tol = kDefaultTol;
  /// Absolute slack on both sides of the predicted Riesz envelope.
  double envelope_slack = 1e-8;
  /// Build U = S_ΘΛ S_Λ⁺ and check UΛ_k* = Θ_k* and ‖(I − U)|_M‖ ≤ α.
  bool verify_mechanism = true;
};

struct MechanismCheck {
  /// max_k ‖UΛ_k* − Θ_k*‖₂.
  double identity_defect = 0.0;
  /// sup_{f ∈ M, ‖f‖=1} ‖f − Uf‖.
  double contraction = 0.0;
  bool holds = false;
};

struct PerturbationReport {
  /// Σ‖Λ_i − Θ_i‖·‖Λ_1 S_Λ⁺‖.
  double alpha_statement = 0.0;
  /// Σ‖Λ_i − Θ_i‖·‖Λ_i S_Λ⁺‖; gates the guarantee.
  double alpha_proof = 0.0;
  double beta = 0.0;
  FrameBounds base;
  /// (1 − α)²·A_Λ.
  double predicted_lower = 0.0;
  /// (√β + √B_Λ)².
  double predicted_upper = 0.0;
  FrameBounds measured;
  bool hypothesis_met = false;
  Check lower_envelope;
  Check upper_envelope;
  bool envelope_holds = true;
  std::optional<MechanismCheck> mechanism;
};

/// Throws PreconditionError when base is not a g-Riesz sequence.
PerturbationReport riesz_perturbation(const GFrameFamily& base, const GFrameFamily& perturbed,
                                      const PerturbationOptions& options = {});

struct DecayPerturbationReport {
  double mu = 0.0;
  double theta1_norm = 0.0;
  double base_lower = 0.0;
  /// max_i ‖Θ_1 T^i‖ / (μ^i ‖Θ_1‖) over i = 0..depth (0 when Θ_1 = 0).
  double h1_worst_ratio = 0.0;
  bool h1 = false;
  /// ‖Θ_1‖ against (1 − μ)√A_Λ.
  Check h2;
  double beta_sum = 0.0;
  double beta_bound = 0.0;
  double alpha_bound = 0.0;
  bool hypothesis_met = false;
  FrameBounds perturbed_riesz;
  /// Only meaningful when hypothesis_met.
  std::optional<bool> riesz_preserved;
  PerturbationReport envelope;
};

/// Compares {Λ_1 T^{i-1}} with {(Λ_1 + Θ_1) T^{i-1}} at the given depth.
DecayPerturbationReport decay_perturbation(const Operator& lambda1, const Operator& t, const Operator& theta1, double mu,
                                           int depth, double tol = kDefaultTol);

struct DualNormReport {
  double lower_bound = 0.0;
  /// max_i ‖Λ_i S_Λ⁻¹‖·√A_Λ.
  double max_ratio = 0.0;
  Check within_bound;
};

DualNormReport dual_member_norm_bound(const GFrameFamily& family, double tol = kDefaultTol);

}  // namespace gframe
