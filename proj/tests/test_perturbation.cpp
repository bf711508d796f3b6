#include <doctest.h>

#include <cmath>
#include <random>

#include "gframe/errors.hpp"
#include "gframe/perturbation.hpp"
#include "gframe/representation.hpp"
#include "support.hpp"

using namespace gframe;
using namespace gframe::testing;

namespace {

const Operator kDiag = diag_op({0.5, 1.0 / 3.0});

/// Members of base plus `scale` times unit-norm Gaussian blocks.
GFrameFamily perturb(const GFrameFamily& base, double scale, std::mt19937_64& rng) {
  std::vector<Operator> out;
  for (const auto& m : base.members()) {
    Matrix e = random_complex_gaussian(m.cod_dim(), m.dom_dim(), rng);
    e /= Operator(e).norm();
    out.emplace_back(m.matrix() + scale * e);
  }
  return GFrameFamily(std::move(out));
}

/// Riesz bounds from the singular values of the stacked synthesis matrix, assembled by hand.
FrameBounds direct_riesz(const GFrameFamily& family) {
  Matrix syn(family.dom_dim(), family.total_cod_dim());
  Index col = 0;
  for (const auto& m : family.members()) {
    syn.middleCols(col, m.cod_dim()) = m.matrix().adjoint();
    col += m.cod_dim();
  }
  Eigen::JacobiSVD<Matrix> svd(syn);
  const auto& s = svd.singularValues();
  const double lower = syn.cols() > syn.rows() ? 0.0 : s(s.size() - 1) * s(s.size() - 1);
  return {lower, s(0) * s(0)};
}

}  // namespace

TEST_CASE("identical families give α = β = 0") {
  const GFrameFamily base({Operator::identity(2)});
  const PerturbationReport r = riesz_perturbation(base, base);
  CHECK(r.alpha_proof == 0.0);
  CHECK(r.alpha_statement == 0.0);
  CHECK(r.beta == 0.0);
  CHECK(std::abs(r.predicted_lower - r.base.lower) < 1e-15);
  CHECK(std::abs(r.predicted_upper - r.base.upper) < 1e-15);
  CHECK(std::abs(r.measured.lower - r.base.lower) < 1e-15);
  REQUIRE(r.mechanism.has_value());
  CHECK(r.mechanism->holds);
}

TEST_CASE("small perturbation of a two-member Riesz sequence stays in the envelope") {
  // Riesz sequence in ℂ⁴: Id₂ and diag(1/2, 1/3) placed on complementary coordinates.
  Matrix a = Matrix::Zero(2, 4), b = Matrix::Zero(2, 4);
  a.leftCols(2) = Matrix::Identity(2, 2);
  b.rightCols(2) = kDiag.matrix();
  const GFrameFamily base({Operator(a), Operator(b)});
  std::mt19937_64 rng(1);
  const GFrameFamily perturbed = perturb(base, 0.01, rng);

  const PerturbationReport r = riesz_perturbation(base, perturbed);
  CHECK(r.hypothesis_met);
  CHECK(r.envelope_holds);
  const FrameBounds oracle = direct_riesz(perturbed);
  CHECK(std::abs(r.measured.lower - oracle.lower) < 1e-12);
  CHECK(std::abs(r.measured.upper - oracle.upper) < 1e-12);
  CHECK(r.mechanism->holds);
  CHECK(r.mechanism->contraction <= r.alpha_proof + 1e-9);
}

TEST_CASE("large perturbation reports the hypothesis failure") {
  const GFrameFamily base({Operator::identity(2)});
  std::mt19937_64 rng(2);
  const PerturbationReport r = riesz_perturbation(base, perturb(base, 5.0, rng));
  CHECK_FALSE(r.hypothesis_met);
  CHECK(r.alpha_proof >= 1.0);
  CHECK(r.measured.upper > 0.0);
}

TEST_CASE("overcomplete base is rejected") {
  const GFrameFamily base({Operator::identity(2), kDiag});
  CHECK_THROWS_AS(riesz_perturbation(base, base), PreconditionError);
}

TEST_CASE("α and β are homogeneous in the perturbation scale") {
  std::mt19937_64 rng(3);
  const GFrameFamily base = build_random_g_frame(random_spec(6, 2, 3, 9));
  std::vector<Matrix> dir;
  for (const auto& m : base.members()) dir.push_back(random_complex_gaussian(m.cod_dim(), 6, rng));
  auto at = [&](double s) {
    std::vector<Operator> out;
    for (std::size_t i = 0; i < base.size(); ++i) out.emplace_back(base[i].matrix() + s * dir[i]);
    return riesz_perturbation(base, GFrameFamily(out), PerturbationOptions{.verify_mechanism = false});
  };
  const PerturbationReport full = at(0.01), half = at(0.005);
  CHECK(std::abs(half.alpha_proof - 0.5 * full.alpha_proof) < 1e-12 * full.alpha_proof);
  CHECK(std::abs(half.alpha_statement - 0.5 * full.alpha_statement) < 1e-12 * full.alpha_statement);
  CHECK(std::abs(half.beta - 0.25 * full.beta) < 1e-12 * full.beta);
}

TEST_CASE("decay perturbation on the diagonal example") {
  SUBCASE("zero perturbation") {
    const DecayPerturbationReport r =
        decay_perturbation(Operator::identity(2), kDiag, Operator::zero(2, 2), 0.5, 1);
    CHECK(r.h1);
    CHECK(r.h2.verdict);
    CHECK(r.hypothesis_met);
    REQUIRE(r.riesz_preserved.has_value());
    CHECK(*r.riesz_preserved);
    CHECK(std::abs(r.perturbed_riesz.lower - 1.0) < 1e-15);
  }
  SUBCASE("ε below (1 − μ)√A keeps a positive lower bound") {
    const double eps = 0.3;
    const DecayPerturbationReport r =
        decay_perturbation(Operator::identity(2), kDiag, Complex(eps) * Operator::identity(2), 0.5, 1);
    CHECK(r.h1);
    CHECK(std::abs(r.h2.threshold - 0.5) < 1e-15);
    CHECK(r.hypothesis_met);
    CHECK(std::abs(r.perturbed_riesz.lower - (1.0 + eps) * (1.0 + eps)) < 1e-14);
    CHECK(*r.riesz_preserved);
    CHECK(r.beta_sum <= r.beta_bound + 1e-10);
  }
  SUBCASE("ε above the threshold is not asserted") {
    const DecayPerturbationReport r =
        decay_perturbation(Operator::identity(2), kDiag, Complex(5.0) * Operator::identity(2), 0.5, 1);
    CHECK_FALSE(r.hypothesis_met);
    CHECK_FALSE(r.riesz_preserved.has_value());
  }
  SUBCASE("μ outside [0, 1)") {
    CHECK_THROWS_AS(decay_perturbation(Operator::identity(2), kDiag, Operator::zero(2, 2), 1.0, 1), DomainError);
    CHECK_THROWS_AS(decay_perturbation(Operator::identity(2), kDiag, Operator::zero(2, 2), -0.1, 1), DomainError);
  }
  SUBCASE("depth beyond the Riesz range is a precondition failure") {
    CHECK_THROWS_AS(decay_perturbation(Operator::identity(2), kDiag, Operator::zero(2, 2), 0.5, 3), PreconditionError);
  }
}

TEST_CASE("H1 geometric tail") {
  // Θ_1 T^i = ε·diag(2^{-i}, 3^{-i}), so ‖Θ_1 T^i‖ = ε·2^{-i} and H1 holds with μ = 1/2 exactly.
  const double eps = 0.2;
  const DecayPerturbationReport r =
      decay_perturbation(Operator::identity(2), kDiag, Complex(eps) * Operator::identity(2), 0.5, 1);
  CHECK(r.h1_worst_ratio <= 1.0 + 1e-12);
  CHECK(std::abs(r.beta_bound - eps * eps / 0.75) < 1e-15);
}

TEST_CASE("dual member norms") {
  SUBCASE("{Id} is the equality case") {
    const DualNormReport r = dual_member_norm_bound(GFrameFamily({Operator::identity(2)}));
    CHECK(std::abs(r.max_ratio - 1.0) < 1e-15);
    CHECK(r.within_bound.verdict);
  }
  SUBCASE("S = diag(4/3, 9/8)") {
    const GFrameFamily family = generate_family(Operator::identity(2), kDiag, 60);
    const DualNormReport r = dual_member_norm_bound(family);
    // ‖Λ_1 S⁻¹‖ = 8/9 and √A = √(9/8).
    CHECK(std::abs(r.max_ratio - (8.0 / 9.0) * std::sqrt(9.0 / 8.0)) < 1e-14);
    CHECK(r.within_bound.verdict);
  }
  SUBCASE("random g-frames") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(dual_member_norm_bound(random_mixed_family(5, 6, 2, seed)).max_ratio <= 1.0 + 1e-10);
    }
  }
}
