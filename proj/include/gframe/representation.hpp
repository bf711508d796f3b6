#pragma once

// Operator representations Λ_i = Λ_1 T^{i-1}: generation, least-squares fitting, the
// kernel shift-invariance test, and the numerical checks of the structural results on T
// (closed range, injectivity, power decay, unitary and compactness obstructions,
// similarity transport).

#include <optional>
#include <vector>

#include "gframe/frame_core.hpp"
#include "gframe/types.hpp"

namespace gframe {

/// Slack added to √(B/A) when judging the norm certificate.
inline constexpr double kCertificateSlack = 1e-8;

/// {Λ_1 T^{i-1}}_{i=1..depth} by iterated right multiplication. Marked as a truncation.
GFrameFamily generate_family(const Operator& lambda1, const Operator& t, int depth);

/// ‖Λ_{i+1} − Λ_i T‖_F for i = 1..N−1.
std::vector<double> representation_residuals(const GFrameFamily& family, const Operator& t);

/// Frame operator of the untruncated family {Λ_1 T^{i-1}}_{i∈ℕ}, i.e. the solution of
/// S = Λ_1*Λ_1 + T* S T, by repeated squaring. Throws DomainError when the series diverges.
Operator stationary_frame_operator(const Operator& lambda1, const Operator& t, double tol = 1e-16);

struct NormCertificate {
  double t_norm = 0.0;
  /// √(B_Λ/A_Λ); +∞ when the family is not a g-frame.
  double bound = 0.0;
  bool applicable = false;
  Check satisfied;
};

struct RepresentationFit {
  Operator t_matrix;
  std::vector<double> step_residuals;
  double max_residual = 0.0;
  Check exact;
  bool unique = false;
  Index stacked_rank = 0;
  NormCertificate norm_certificate;
};

RepresentationFit fit_representation(const GFrameFamily& family, double tol = kDefaultTol);

struct ShiftInvarianceReport {
  Index kernel_dim = 0;
  /// Distance of the truncated right shift of Ker T_Λ from Ker T_Λ (spectral norm of
  /// (I − P_ker)·Shift·Q_ker).
  double defect = 0.0;
  /// Same, restricted to kernel vectors whose last block vanishes; the truncated shift
  /// loses nothing for those.
  Index interior_kernel_dim = 0;
  double interior_defect = 0.0;
  /// True for truncations when the full defect fails but the interior one passes:
  /// the failure is attributable to the dropped last block.
  bool edge_effect = false;
  bool invariant = false;
  /// Longest prefix {Λ_1..Λ_p} whose stacked synthesis is injective (finite independence).
  std::size_t independent_prefix_length = 0;
  bool prefix_independent = false;
};

ShiftInvarianceReport kernel_shift_invariance(const GFrameFamily& family, double tol = kDefaultTol);

struct RangeSpanReport {
  Index rank_range_t_adjoint = 0;
  Index rank_span = 0;
  /// ‖P_{Ran T*} − P_{span T*Λ_i*e_j}‖₂.
  Check projector_distance;
};

RangeSpanReport range_span_identity(const GFrameFamily& family, const Operator& t, double tol = kDefaultTol);

struct SufficientCondition {
  double lambda1_norm = 0.0;
  double sqrt_lower = 0.0;
  bool holds = false;
};

struct InjectivityReport {
  double sigma_min_t = 0.0;
  double injectivity_threshold = 0.0;
  bool injective = false;
  SufficientCondition sufficient_condition;
  /// Largest cosine between Ran(S_Λ⁻¹Λ_1*) and Ker T (0 when either is trivial).
  double max_principal_cosine = 0.0;
  bool cond_ii = false;
  /// ‖(I − P_{Ran T*}) Λ_1*‖₂.
  double range_defect = 0.0;
  bool cond_iii = false;
  bool verdicts_agree = false;
  /// False only if the sufficient condition holds while T is not injective.
  bool sufficient_consistent = true;
};

InjectivityReport injectivity_report(const GFrameFamily& family, const Operator& t, double tol = kDefaultTol);

struct DecayTrace {
  std::vector<double> norms;
  std::vector<double> tail_energies;
  double lower_bound = 0.0;
  /// min_n (tail_energies[n] − A_Λ‖Tⁿf‖²).
  double chain_margin = 0.0;
  bool chain_holds = false;
  Check converged;
};

/// Tracks ‖Tⁿf‖ and Σ_{i=n}^{steps}‖Λ_1 T^i f‖² for n = 0..steps. A_Λ is the lower frame
/// bound of {Λ_1 T^{i-1}}_{i=1..steps+1}; the chain is checked with absolute slack
/// 1e-9·max(1, ‖f‖²). Converged when ‖T^{steps} f‖ < threshold·‖f‖.
DecayTrace power_decay(const Operator& t, const Vector& f, const Operator& lambda1, int steps,
                       double threshold = 1e-6);

struct GrowthRow {
  int depth = 0;
  FrameBounds bounds;
  double upper_over_depth = 0.0;
  double witness_energy = 0.0;
};

struct UnitaryObstructionReport {
  double unitary_defect = 0.0;
  std::vector<GrowthRow> growth;
  /// B_N/N positive and consecutive ratios within 20% of each other.
  bool linear_growth = false;
  DecayTrace witness_decay;
  bool decay_fails = false;
  bool obstruction_witnessed = false;
};

UnitaryObstructionReport unitary_obstruction(const Operator& lambda1, const Operator& t, const std::vector<int>& depths,
                                             double tol = 1e-10);

struct MixedObstructionReport {
  Operator mixed_operator;
  double unitary_defect = 0.0;
  std::vector<UnitaryObstructionReport> generators;
  bool all_obstructed = false;
};

/// Checks that S_ΛΘ of two g-orthonormal families is unitary, then runs the unitary
/// obstruction for every generator Γ_1 in gamma1s.
MixedObstructionReport mixed_operator_obstruction(const GFrameFamily& onb_a, const GFrameFamily& onb_b,
                                                  const std::vector<Operator>& gamma1s, const std::vector<int>& depths,
                                                  double tol = 1e-10);

struct SimilarityReport {
  Operator theta;
  Operator s_matrix;
  /// Largest relative difference between ‖ΛT^{i-1}f‖² and ‖ΘS^{i-1}Vf‖² over i and probes.
  double termwise_defect = 0.0;
  double sum_defect = 0.0;
  FrameBounds lambda_bounds;
  FrameBounds theta_bounds;
  bool same_verdict = false;
  bool v_unique = false;
  /// Residual of V⁻¹TV as a representation of {Λ_i V}.
  double remark_residual = 0.0;
  /// ‖fit({Λ_i V}) − V⁻¹TV‖₂ / max(1, ‖V⁻¹TV‖₂) when the fit is unique.
  std::optional<double> remark_fit_distance;
  bool holds = false;
};

/// Θ = Λ_1 V⁻¹ and S = V T V⁻¹. Probes default to the standard basis plus the normalized
/// all-ones vector.
SimilarityReport similarity_transport(const Operator& lambda1, const Operator& t, const Operator& v, int depth,
                                      double tol = kDefaultTol, const std::vector<Vector>& probes = {});

struct GeneratorBoundReport {
  double lower_bound = 0.0;
  FrameBounds candidate_bounds;
  FrameBounds candidate_bounds_doubled;
  bool candidate_is_g_frame = false;
  bool bounds_stable = false;
  bool hypothesis_met = false;
  /// 1 − A_Λ; positive when the conclusion holds.
  double margin = 0.0;
  bool conclusion_holds = true;
};

/// Candidate family {Θ_1 S_Λ^{i-1}} at depth and 2·depth; stable when the upper bound
/// grows by less than stability_rel_tol relative on doubling.
GeneratorBoundReport frame_operator_generator_bound(const GFrameFamily& family, const Operator& theta1, int depth,
                                                    double tol = kDefaultTol, double stability_rel_tol = 1e-3);

struct CompactnessReport {
  Index rank_t = 0;
  Index dom_dim = 0;
  Index cod_dim = 0;
  /// K is modeled as finite-dimensional relative to H when dim K < dim H.
  bool codomain_finite = false;
  bool low_rank = false;
  bool is_g_frame = false;
  /// rank span{Λ_{i+1}* e_j}: Ran T* contains it.
  Index tail_span_rank = 0;
  /// dim H − dim K: floor on rank T forced by a g-frame.
  Index forced_rank_floor = 0;
  bool mechanism_holds = false;
};

CompactnessReport compactness_dichotomy(const GFrameFamily& family, const Operator& t, double rank_tol = kDefaultTol);

}  // namespace gframe
