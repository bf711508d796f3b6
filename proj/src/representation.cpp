#include "gframe/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gframe/errors.hpp"
#include "gframe/linalg.hpp"

namespace gframe {
namespace {

// Relative step residual above which a supplied T is rejected as a representation.
constexpr double kRepresentationTol = 1e-8;

double max_member_frobenius(const GFrameFamily& family) {
  double m = 0.0;
  for (const auto& op : family.members()) m = std::max(m, op.matrix().norm());
  return m;
}

Index require_shared_cod(const GFrameFamily& family, const char* what) {
  const auto m = family.shared_cod_dim();
  if (!m) throw DimensionError(std::string(what) + " requires members with a shared codomain");
  return *m;
}

void require_square(const Operator& t, Index n, const char* what) {
  if (t.cod_dim() != n || t.dom_dim() != n) {
    throw DimensionError(std::string(what) + ": T must be square with side " + std::to_string(n));
  }
}

void require_representation(const GFrameFamily& family, const Operator& t) {
  require_square(t, family.dom_dim(), "representation");
  const auto residuals = representation_residuals(family, t);
  const double worst = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
  const double relative = worst / std::max(1.0, max_member_frobenius(family));
  if (relative > kRepresentationTol) throw PreconditionError("T does not represent the family", relative);
}

Matrix stack_rows(const GFrameFamily& family, std::size_t first, std::size_t last) {
  Index rows = 0;
  for (std::size_t i = first; i < last; ++i) rows += family[i].cod_dim();
  Matrix out(rows, family.dom_dim());
  Index r = 0;
  for (std::size_t i = first; i < last; ++i) {
    out.middleRows(r, family[i].cod_dim()) = family[i].matrix();
    r += family[i].cod_dim();
  }
  return out;
}

// Truncated right shift on N blocks of size m: prepend a zero block, drop the last one.
Matrix truncated_shift(Index blocks, Index m) {
  const Index total = blocks * m;
  Matrix shift = Matrix::Zero(total, total);
  if (blocks > 1) shift.bottomLeftCorner(total - m, total - m).setIdentity();
  return shift;
}

}  // namespace

GFrameFamily generate_family(const Operator& lambda1, const Operator& t, int depth) {
  if (depth < 1) throw DomainError("depth must be positive");
  require_square(t, lambda1.dom_dim(), "generate_family");
  std::vector<Operator> members;
  members.reserve(static_cast<std::size_t>(depth));
  Matrix current = lambda1.matrix();
  for (int i = 0; i < depth; ++i) {
    members.emplace_back(current);
    if (i + 1 < depth) current = current * t.matrix();
  }
  return GFrameFamily(std::move(members), Extent::truncation);
}

std::vector<double> representation_residuals(const GFrameFamily& family, const Operator& t) {
  require_square(t, family.dom_dim(), "representation_residuals");
  std::vector<double> out;
  out.reserve(family.size() > 0 ? family.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < family.size(); ++i) {
    if (family[i].cod_dim() != family[i + 1].cod_dim()) throw DimensionError("codomain changes along the family", i + 1);
    out.push_back((family[i + 1].matrix() - family[i].matrix() * t.matrix()).norm());
  }
  return out;
}

Operator stationary_frame_operator(const Operator& lambda1, const Operator& t, double tol) {
  require_square(t, lambda1.dom_dim(), "stationary_frame_operator");
  Matrix s = lambda1.matrix().adjoint() * lambda1.matrix();
  Matrix power = t.matrix();
  // After k doublings s holds the first 2^k terms of Σ T*^i Λ_1*Λ_1 T^i.
  for (int k = 0; k < 64; ++k) {
    const Matrix increment = power.adjoint() * s * power;
    s += increment;
    if (!s.allFinite()) break;
    if (linalg::spectral_norm(increment) <= tol * linalg::spectral_norm(s)) return Operator(std::move(s));
    power = power * power;
  }
  throw DomainError("frame operator series does not converge (spectral radius of T is not below 1)");
}

RepresentationFit fit_representation(const GFrameFamily& family, double tol) {
  if (family.size() < 2) throw PreconditionError("fitting needs at least two members", static_cast<double>(family.size()));
  require_shared_cod(family, "fit_representation");
  const Matrix x = stack_rows(family, 0, family.size() - 1);
  const Matrix y = stack_rows(family, 1, family.size());
  Operator t(linalg::pseudo_inverse(x, tol) * y);

  auto residuals = representation_residuals(family, t);
  const double worst = *std::max_element(residuals.begin(), residuals.end());
  const Index rank = linalg::numerical_rank(x, tol);

  NormCertificate cert;
  cert.t_norm = t.norm();
  const FrameBounds fb = frame_bounds(family);
  cert.applicable = fb.lower > tol * fb.upper;
  cert.bound = cert.applicable ? std::sqrt(fb.upper / fb.lower) : std::numeric_limits<double>::infinity();
  cert.satisfied = check_less_equal(cert.t_norm, cert.bound + kCertificateSlack);

  return RepresentationFit{
      .t_matrix = std::move(t),
      .step_residuals = std::move(residuals),
      .max_residual = worst,
      .exact = check_less(worst, tol * max_member_frobenius(family)),
      .unique = rank == family.dom_dim(),
      .stacked_rank = rank,
      .norm_certificate = cert,
  };
}

ShiftInvarianceReport kernel_shift_invariance(const GFrameFamily& family, double tol) {
  const Index m = require_shared_cod(family, "kernel_shift_invariance");
  const Index n = family.dom_dim();
  const auto blocks = static_cast<Index>(family.size());
  ShiftInvarianceReport r;

  for (std::size_t p = 1; p <= family.size(); ++p) {
    const Matrix wp = family.slice(0, p).stacked_synthesis();
    if (wp.cols() > n) break;
    const RealVector sv = linalg::singular_values(wp);
    if (!(sv(sv.size() - 1) > tol * sv(0))) break;
    r.independent_prefix_length = p;
  }
  r.prefix_independent = r.independent_prefix_length == family.size();

  const Matrix w = family.stacked_synthesis();
  const Matrix kernel = linalg::kernel_basis(w, tol);
  r.kernel_dim = kernel.cols();
  if (r.kernel_dim == 0) {
    r.invariant = true;
    return r;
  }
  const Index total = blocks * m;
  const Matrix shift = truncated_shift(blocks, m);
  const Matrix outside = Matrix::Identity(total, total) - kernel * kernel.adjoint();
  r.defect = linalg::spectral_norm(outside * shift * kernel);

  const Matrix last_block = kernel.bottomRows(m);
  const Matrix interior = kernel * linalg::kernel_basis_abs(last_block, tol);
  r.interior_kernel_dim = interior.cols();
  r.interior_defect = interior.cols() == 0 ? 0.0 : linalg::spectral_norm(outside * shift * interior);

  if (family.extent() == Extent::truncation) {
    r.invariant = r.interior_defect < tol;
    r.edge_effect = r.invariant && !(r.defect < tol);
  } else {
    r.invariant = r.defect < tol;
  }
  return r;
}

RangeSpanReport range_span_identity(const GFrameFamily& family, const Operator& t, double tol) {
  require_representation(family, t);
  const Index n = family.dom_dim();
  const Matrix t_adj = t.matrix().adjoint();
  const Matrix span = t_adj * family.stacked_synthesis();
  const Matrix q_range = linalg::range_basis(t_adj, tol);
  const Matrix q_span = linalg::range_basis(span, tol);
  RangeSpanReport r;
  r.rank_range_t_adjoint = q_range.cols();
  r.rank_span = q_span.cols();
  const double dist = linalg::spectral_norm(linalg::projector(q_range, n) - linalg::projector(q_span, n));
  r.projector_distance = check_less(dist, std::max(1e-8, tol));
  return r;
}

InjectivityReport injectivity_report(const GFrameFamily& family, const Operator& t, double tol) {
  const Classification c = classify(family, tol);
  if (!c.is_g_frame) throw PreconditionError("injectivity report requires a g-frame", c.bounds.lower);
  require_representation(family, t);

  const Index n = family.dom_dim();
  const Matrix& tm = t.matrix();
  const Matrix& l1 = family[0].matrix();
  InjectivityReport r;

  const RealVector sv = linalg::singular_values(tm);
  r.sigma_min_t = sv(sv.size() - 1);
  r.injectivity_threshold = tol * std::max(1.0, sv(0));
  r.injective = r.sigma_min_t > r.injectivity_threshold;

  r.sufficient_condition.lambda1_norm = linalg::spectral_norm(l1);
  r.sufficient_condition.sqrt_lower = std::sqrt(c.bounds.lower);
  r.sufficient_condition.holds = r.sufficient_condition.lambda1_norm < r.sufficient_condition.sqrt_lower;
  r.sufficient_consistent = !r.sufficient_condition.holds || r.injective;

  // (ii) Ran(S⁻¹Λ_1*) ∩ Ker T = {0}, via the largest principal cosine.
  const Matrix s = frame_operator(family).matrix();
  const Matrix s_inv_l1_adj = s.ldlt().solve(l1.adjoint());
  const Matrix q_ran = linalg::range_basis(s_inv_l1_adj, tol);
  const Matrix q_ker = linalg::kernel_basis_abs(tm, r.injectivity_threshold);
  r.max_principal_cosine =
      (q_ran.cols() == 0 || q_ker.cols() == 0) ? 0.0 : linalg::spectral_norm(q_ran.adjoint() * q_ker);
  r.cond_ii = r.max_principal_cosine < 1.0 - tol;

  // (iii) Ran Λ_1* ⊆ Ran T*.
  const Matrix q_range_t_adj = linalg::range_basis_abs(tm.adjoint(), r.injectivity_threshold);
  const Matrix residual = (Matrix::Identity(n, n) - linalg::projector(q_range_t_adj, n)) * l1.adjoint();
  r.range_defect = linalg::spectral_norm(residual);
  r.cond_iii = r.range_defect <= tol * std::max(1.0, r.sufficient_condition.lambda1_norm);

  r.verdicts_agree = (r.cond_ii == r.cond_iii) && (r.cond_iii == r.injective);
  return r;
}

DecayTrace power_decay(const Operator& t, const Vector& f, const Operator& lambda1, int steps, double threshold) {
  if (steps < 1) throw DomainError("steps must be positive");
  const Index n = lambda1.dom_dim();
  require_square(t, n, "power_decay");
  if (f.size() != n) throw DimensionError("vector length does not match domain dimension");

  DecayTrace d;
  const auto count = static_cast<std::size_t>(steps) + 1;
  d.norms.reserve(count);
  std::vector<double> energies;
  energies.reserve(count);
  Vector current = f;
  for (std::size_t k = 0; k < count; ++k) {
    d.norms.push_back(current.norm());
    energies.push_back((lambda1.matrix() * current).squaredNorm());
    current = t.matrix() * current;
  }
  d.tail_energies.assign(count, 0.0);
  double acc = 0.0;
  for (std::size_t k = count; k-- > 0;) {
    acc += energies[k];
    d.tail_energies[k] = acc;
  }

  d.lower_bound = frame_bounds(generate_family(lambda1, t, steps + 1)).lower;
  d.chain_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    d.chain_margin = std::min(d.chain_margin, d.tail_energies[k] - d.lower_bound * d.norms[k] * d.norms[k]);
  }
  const double f_norm = f.norm();
  d.chain_holds = d.chain_margin >= -1e-9 * std::max(1.0, f_norm * f_norm);
  d.converged = check_less(d.norms.back(), threshold * f_norm);
  return d;
}

UnitaryObstructionReport unitary_obstruction(const Operator& lambda1, const Operator& t, const std::vector<int>& depths,
                                             double tol) {
  require_square(t, lambda1.dom_dim(), "unitary_obstruction");
  if (depths.empty()) throw DomainError("at least one depth is required");
  UnitaryObstructionReport r;
  r.unitary_defect = linalg::unitary_defect(t.matrix());
  if (r.unitary_defect > tol) throw PreconditionError("T is not unitary: ‖T*T − I‖", r.unitary_defect);

  Eigen::BDCSVD<Matrix> svd(lambda1.matrix(), Eigen::ComputeFullV);
  const Vector witness = svd.matrixV().col(0);

  const int max_depth = *std::max_element(depths.begin(), depths.end());
  // Witness energies Σ_{i<N} ‖Λ_1 T^i w‖² for every N up to max_depth.
  std::vector<double> cumulative(static_cast<std::size_t>(max_depth) + 1, 0.0);
  Vector current = witness;
  for (int i = 0; i < max_depth; ++i) {
    cumulative[static_cast<std::size_t>(i) + 1] =
        cumulative[static_cast<std::size_t>(i)] + (lambda1.matrix() * current).squaredNorm();
    current = t.matrix() * current;
  }

  for (int depth : depths) {
    GrowthRow row;
    row.depth = depth;
    row.bounds = frame_bounds(generate_family(lambda1, t, depth));
    row.upper_over_depth = row.bounds.upper / depth;
    row.witness_energy = cumulative[static_cast<std::size_t>(depth)];
    r.growth.push_back(row);
  }
  r.linear_growth = std::all_of(r.growth.begin(), r.growth.end(), [](const GrowthRow& g) { return g.upper_over_depth > 0.0; });
  for (std::size_t k = 1; k < r.growth.size(); ++k) {
    const double ratio = r.growth[k].upper_over_depth / r.growth[k - 1].upper_over_depth;
    if (std::abs(ratio - 1.0) > 0.2) r.linear_growth = false;
  }

  r.witness_decay = power_decay(t, witness, lambda1, max_depth);
  r.decay_fails = !r.witness_decay.converged.verdict;
  r.obstruction_witnessed = r.linear_growth && r.decay_fails;
  return r;
}

MixedObstructionReport mixed_operator_obstruction(const GFrameFamily& onb_a, const GFrameFamily& onb_b,
                                                  const std::vector<Operator>& gamma1s, const std::vector<int>& depths,
                                                  double tol) {
  for (const auto* fam : {&onb_a, &onb_b}) {
    const Classification c = classify(*fam, tol);
    if (!c.is_g_orthonormal) {
      throw PreconditionError("mixed obstruction requires g-orthonormal families",
                              std::max(c.gram_defect, c.parseval_defect));
    }
  }
  Operator s = mixed_frame_operator(onb_a, onb_b);
  const double defect = linalg::unitary_defect(s.matrix());
  MixedObstructionReport r{.mixed_operator = s, .unitary_defect = defect, .generators = {}, .all_obstructed = true};
  for (const auto& gamma1 : gamma1s) {
    r.generators.push_back(unitary_obstruction(gamma1, s, depths, tol));
    r.all_obstructed = r.all_obstructed && r.generators.back().obstruction_witnessed;
  }
  return r;
}

SimilarityReport similarity_transport(const Operator& lambda1, const Operator& t, const Operator& v, int depth, double tol,
                                      const std::vector<Vector>& probes) {
  const Index n = lambda1.dom_dim();
  require_square(t, n, "similarity_transport");
  require_square(v, n, "similarity_transport");
  const RealVector sv = linalg::singular_values(v.matrix());
  if (!(sv(sv.size() - 1) > tol * sv(0))) throw PreconditionError("V is singular: σ_min", sv(sv.size() - 1));

  const Matrix v_inv = v.matrix().partialPivLu().inverse();
  Operator theta(lambda1.matrix() * v_inv);
  Operator s(v.matrix() * t.matrix() * v_inv);

  std::vector<Vector> tests = probes;
  if (tests.empty()) {
    for (Index k = 0; k < n; ++k) tests.emplace_back(Vector::Unit(n, k));
    tests.emplace_back(Vector::Ones(n) / std::sqrt(static_cast<double>(n)));
  }

  const GFrameFamily lambda_family = generate_family(lambda1, t, depth);
  const GFrameFamily theta_family = generate_family(theta, s, depth);

  double termwise = 0.0;
  double sums = 0.0;
  for (const auto& f : tests) {
    if (f.size() != n) throw DimensionError("probe vector length does not match domain dimension");
    const Vector vf = v.matrix() * f;
    double lhs_sum = 0.0;
    double rhs_sum = 0.0;
    for (int i = 0; i < depth; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double lhs = (lambda_family[idx].matrix() * f).squaredNorm();
      const double rhs = (theta_family[idx].matrix() * vf).squaredNorm();
      termwise = std::max(termwise, std::abs(lhs - rhs) / std::max(1.0, lhs));
      lhs_sum += lhs;
      rhs_sum += rhs;
    }
    sums = std::max(sums, std::abs(lhs_sum - rhs_sum) / std::max(1.0, lhs_sum));
  }

  SimilarityReport r{.theta = theta,
                     .s_matrix = s,
                     .termwise_defect = termwise,
                     .sum_defect = sums,
                     .lambda_bounds = frame_bounds(lambda_family),
                     .theta_bounds = frame_bounds(theta_family),
                     .same_verdict = false,
                     .v_unique = false,
                     .remark_residual = 0.0,
                     .remark_fit_distance = std::nullopt};
  const bool lambda_frame = r.lambda_bounds.lower > tol * r.lambda_bounds.upper;
  const bool theta_frame = r.theta_bounds.lower > tol * r.theta_bounds.upper;
  r.same_verdict = lambda_frame == theta_frame;
  r.v_unique = linalg::numerical_rank(theta_family.stacked_analysis(), tol) == n;

  // {Λ_i V} is represented by V⁻¹ T V.
  std::vector<Operator> moved;
  moved.reserve(lambda_family.size());
  for (const auto& m : lambda_family.members()) moved.emplace_back(m.matrix() * v.matrix());
  const GFrameFamily moved_family(std::move(moved), Extent::truncation);
  const Operator conjugated(v_inv * t.matrix() * v.matrix());
  const auto residuals = representation_residuals(moved_family, conjugated);
  r.remark_residual = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
  r.remark_residual /= std::max(1.0, max_member_frobenius(moved_family));
  if (depth >= 2) {
    const RepresentationFit fit = fit_representation(moved_family, tol);
    if (fit.unique) {
      r.remark_fit_distance = linalg::spectral_norm(fit.t_matrix.matrix() - conjugated.matrix()) /
                              std::max(1.0, conjugated.norm());
    }
  }
  r.holds = r.termwise_defect < 1e-9 && r.same_verdict && r.remark_residual < 1e-9 &&
            (!r.remark_fit_distance || *r.remark_fit_distance < 1e-8);
  return r;
}

GeneratorBoundReport frame_operator_generator_bound(const GFrameFamily& family, const Operator& theta1, int depth,
                                                    double tol, double stability_rel_tol) {
  if (depth < 1) throw DomainError("depth must be positive");
  const Operator s = frame_operator(family);
  require_square(s, theta1.dom_dim(), "frame_operator_generator_bound");

  GeneratorBoundReport r;
  r.lower_bound = frame_bounds(family).lower;

  // Generated by hand: powers of S_Λ may overflow when λ_max(S_Λ) > 1.
  auto candidate = [&](int d) -> FrameBounds {
    Matrix acc = Matrix::Zero(s.dom_dim(), s.dom_dim());
    Matrix member = theta1.matrix();
    for (int i = 0; i < d; ++i) {
      acc.noalias() += member.adjoint() * member;
      member = member * s.matrix();
      if (!member.allFinite() || member.norm() > 1e100) {
        return {0.0, std::numeric_limits<double>::infinity()};
      }
    }
    const auto [lo, hi] = linalg::hermitian_extremes(acc);
    return {std::max(lo, 0.0), std::max(hi, 0.0)};
  };
  r.candidate_bounds = candidate(depth);
  r.candidate_bounds_doubled = candidate(2 * depth);

  const auto is_frame = [tol](const FrameBounds& b) { return std::isfinite(b.upper) && b.lower > tol * b.upper; };
  r.candidate_is_g_frame = is_frame(r.candidate_bounds) && is_frame(r.candidate_bounds_doubled);
  r.bounds_stable = std::isfinite(r.candidate_bounds_doubled.upper) &&
                    r.candidate_bounds_doubled.upper <= r.candidate_bounds.upper * (1.0 + stability_rel_tol);
  r.hypothesis_met = r.candidate_is_g_frame && r.bounds_stable;
  r.margin = 1.0 - r.lower_bound;
  r.conclusion_holds = !r.hypothesis_met || r.lower_bound < 1.0 + tol;
  return r;
}

CompactnessReport compactness_dichotomy(const GFrameFamily& family, const Operator& t, double rank_tol) {
  const Index m = require_shared_cod(family, "compactness_dichotomy");
  require_representation(family, t);
  CompactnessReport r;
  r.dom_dim = family.dom_dim();
  r.cod_dim = m;
  r.rank_t = linalg::numerical_rank(t.matrix(), rank_tol);
  r.codomain_finite = m < r.dom_dim;
  r.low_rank = r.rank_t < r.dom_dim;
  r.is_g_frame = classify(family, rank_tol).is_g_frame;
  r.tail_span_rank = family.size() >= 2 ? linalg::numerical_rank(family.slice(1, family.size()).stacked_synthesis(), rank_tol) : 0;
  r.forced_rank_floor = std::max<Index>(0, r.dom_dim - m);
  r.mechanism_holds = r.rank_t >= r.tail_span_rank && (!r.is_g_frame || r.tail_span_rank >= r.forced_rank_floor);
  return r;
}

}  // namespace gframe
