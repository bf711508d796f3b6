#include "gframe/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gframe/errors.hpp"
#include "gframe/linalg.hpp"
#include "gframe/representation.hpp"

namespace gframe {

PerturbationReport riesz_perturbation(const GFrameFamily& base, const GFrameFamily& perturbed,
                                      const PerturbationOptions& options) {
  if (base.size() != perturbed.size()) throw DimensionError("base and perturbed families differ in length");
  if (base.dom_dim() != perturbed.dom_dim()) throw DimensionError("base and perturbed families differ in domain");
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].cod_dim() != perturbed[i].cod_dim()) throw DimensionError("codomain dimensions differ", i);
  }

  PerturbationReport r;
  r.base = riesz_bounds(base);
  if (!(r.base.lower > options.tol * r.base.upper)) {
    throw PreconditionError("base family is not a g-Riesz sequence; lower Riesz bound", r.base.lower);
  }

  // S_Λ is invertible only on M = span{Λ_i* e_j}; the pseudoinverse inverts it there.
  const Matrix s = frame_operator(base).matrix();
  const Matrix s_pinv = linalg::pseudo_inverse(s, options.tol);
  const double l1_dual_norm = linalg::spectral_norm(base[0].matrix() * s_pinv);

  for (std::size_t i = 0; i < base.size(); ++i) {
    const double diff = linalg::spectral_norm(base[i].matrix() - perturbed[i].matrix());
    r.alpha_statement += diff * l1_dual_norm;
    r.alpha_proof += diff * linalg::spectral_norm(base[i].matrix() * s_pinv);
    r.beta += diff * diff;
  }
  r.hypothesis_met = r.alpha_proof < 1.0;
  const double shrink = std::max(0.0, 1.0 - r.alpha_proof);
  r.predicted_lower = shrink * shrink * r.base.lower;
  const double grow = std::sqrt(r.beta) + std::sqrt(r.base.upper);
  r.predicted_upper = grow * grow;
  r.measured = riesz_bounds(perturbed);

  r.lower_envelope = {r.measured.lower, r.predicted_lower - options.envelope_slack,
                      r.measured.lower >= r.predicted_lower - options.envelope_slack};
  r.upper_envelope = check_less_equal(r.measured.upper, r.predicted_upper + options.envelope_slack);
  // The upper estimate needs no hypothesis; the lower one only holds when α < 1.
  r.envelope_holds = r.upper_envelope.verdict && (!r.hypothesis_met || r.lower_envelope.verdict);

  if (options.verify_mechanism) {
    const Matrix u = mixed_frame_operator(perturbed, base).matrix() * s_pinv;
    MechanismCheck mc;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const double d = linalg::spectral_norm(u * base[k].matrix().adjoint() - perturbed[k].matrix().adjoint());
      mc.identity_defect = std::max(mc.identity_defect, d);
    }
    const Index n = base.dom_dim();
    const Matrix q_m = linalg::range_basis(base.stacked_synthesis(), options.tol);
    mc.contraction = linalg::spectral_norm((Matrix::Identity(n, n) - u) * q_m);
    mc.holds = mc.identity_defect < options.envelope_slack && mc.contraction <= r.alpha_proof + 1e-9;
    r.mechanism = mc;
  }
  return r;
}

DecayPerturbationReport decay_perturbation(const Operator& lambda1, const Operator& t, const Operator& theta1, double mu,
                                           int depth, double tol) {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainError("mu must lie in [0, 1), got " + std::to_string(mu));
  if (theta1.dom_dim() != lambda1.dom_dim() || theta1.cod_dim() != lambda1.cod_dim()) {
    throw DimensionError("Θ_1 must have the shape of Λ_1");
  }
  const GFrameFamily base = generate_family(lambda1, t, depth);
  const FrameBounds base_riesz = riesz_bounds(base);
  if (!(base_riesz.lower > tol * base_riesz.upper)) {
    throw PreconditionError("base family is not a g-Riesz sequence at this depth; lower Riesz bound", base_riesz.lower);
  }

  DecayPerturbationReport r;
  r.mu = mu;
  r.base_lower = base_riesz.lower;
  r.theta1_norm = theta1.norm();

  // H1: ‖Θ_1 T^i‖ ≤ μ^i ‖Θ_1‖ for i = 0..depth.
  r.h1 = true;
  Matrix power = theta1.matrix();
  double mu_pow = 1.0;
  for (int i = 0; i <= depth; ++i) {
    const double lhs = linalg::spectral_norm(power);
    const double rhs = mu_pow * r.theta1_norm;
    if (rhs > 0.0) r.h1_worst_ratio = std::max(r.h1_worst_ratio, lhs / rhs);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) r.h1 = false;
    if (i < depth) r.beta_sum += lhs * lhs;
    power = power * t.matrix();
    mu_pow *= mu;
  }

  const double h2_threshold = (1.0 - mu) * std::sqrt(r.base_lower);
  r.h2 = check_less(r.theta1_norm, h2_threshold);
  r.beta_bound = r.theta1_norm * r.theta1_norm / (1.0 - mu * mu);
  r.alpha_bound = r.theta1_norm / h2_threshold;
  r.hypothesis_met = r.h1 && r.h2.verdict;

  const GFrameFamily perturbed = generate_family(lambda1 + theta1, t, depth);
  r.perturbed_riesz = riesz_bounds(perturbed);
  if (r.hypothesis_met) r.riesz_preserved = r.perturbed_riesz.lower > tol * r.perturbed_riesz.upper;
  r.envelope = riesz_perturbation(base, perturbed, PerturbationOptions{.tol = tol});
  return r;
}

DualNormReport dual_member_norm_bound(const GFrameFamily& family, double tol) {
  const GFrameFamily dual = canonical_dual(family, tol);
  DualNormReport r;
  r.lower_bound = frame_bounds(family).lower;
  const double sqrt_a = std::sqrt(r.lower_bound);
  for (const auto& m : dual.members()) r.max_ratio = std::max(r.max_ratio, m.norm() * sqrt_a);
  r.within_bound = check_less_equal(r.max_ratio, 1.0 + tol);
  return r;
}

}  // namespace gframe
