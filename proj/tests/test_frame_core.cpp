#include <doctest.h>

#include <cmath>
#include <random>

#include "gframe/errors.hpp"
#include "gframe/frame_core.hpp"
#include "support.hpp"

using namespace gframe;
using namespace gframe::testing;

namespace {

const Operator kDiag = diag_op({0.5, 1.0 / 3.0});

GFrameFamily id_and_diag() { return GFrameFamily({Operator::identity(2), kDiag}); }

/// {T^{i-1}}_{i=1..60} for T = diag(1/2, 1/3); S = diag(Σ4^{-i}, Σ9^{-i}) → diag(4/3, 9/8),
/// and the truncation error at depth 60 is below 1e-15.
GFrameFamily geometric_family() {
  std::vector<Operator> members{Operator::identity(2)};
  for (int i = 1; i < 60; ++i) members.push_back(members.back() * kDiag);
  return GFrameFamily(std::move(members), Extent::truncation);
}

}  // namespace

TEST_CASE("operator construction rejects empty and non-finite matrices") {
  CHECK_THROWS_AS(Operator{Matrix(0, 2)}, DimensionError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(Operator{bad}, DomainError);
}

TEST_CASE("family members must share a domain") {
  CHECK_THROWS_AS(GFrameFamily({Operator::identity(2), Operator::identity(3)}), DimensionError);
  CHECK_THROWS_AS(GFrameFamily(std::vector<Operator>{}), DimensionError);
}

TEST_CASE("synthesis and analysis are adjoint") {
  const GFrameFamily family = random_mixed_family(5, 4, 3, 11);
  std::mt19937_64 rng(3);
  const Vector f = random_complex_gaussian(5, 1, rng).col(0);
  CoefficientFamily g;
  for (const auto& m : family.members()) g.blocks.push_back(random_complex_gaussian(m.cod_dim(), 1, rng).col(0));

  const CoefficientFamily af = analysis_apply(family, f);
  Complex lhs(0.0);
  for (std::size_t i = 0; i < g.blocks.size(); ++i) lhs += af.blocks[i].dot(g.blocks[i]);
  const Complex rhs = f.dot(synthesis_apply(family, g));
  CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
}

TEST_CASE("synthesis names the mismatched block") {
  const GFrameFamily family = id_and_diag();
  CoefficientFamily g{{Vector::Zero(2), Vector::Zero(3)}};
  try {
    synthesis_apply(family, g);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    REQUIRE(e.block_index().has_value());
    CHECK(*e.block_index() == 1);
  }
  CHECK_THROWS_AS(analysis_apply(family, Vector::Zero(3)), DimensionError);
}

TEST_CASE("frame operator of the two-member family") {
  const Matrix s = frame_operator(id_and_diag()).matrix();
  CHECK(std::abs(s(0, 0) - 1.25) < 1e-15);
  CHECK(std::abs(s(1, 1) - 10.0 / 9.0) < 1e-15);
}

TEST_CASE("frame operator of the geometric family is diag(4/3, 9/8)") {
  const Matrix s = frame_operator(geometric_family()).matrix();
  CHECK(std::abs(s(0, 0) - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(s(1, 1) - 9.0 / 8.0) < 1e-15);
  CHECK(std::abs(s(0, 1)) < 1e-15);

  const FrameBounds b = frame_bounds(geometric_family());
  CHECK(std::abs(b.lower - 9.0 / 8.0) < 1e-14);
  CHECK(std::abs(b.upper - 4.0 / 3.0) < 1e-14);
}

TEST_CASE("canonical dual of the geometric family has bounds (3/4, 8/9)") {
  const GFrameFamily family = geometric_family();
  const GFrameFamily dual = canonical_dual(family);
  const FrameBounds b = frame_bounds(dual);
  CHECK(std::abs(b.lower - 0.75) < 1e-14);
  CHECK(std::abs(b.upper - 8.0 / 9.0) < 1e-14);

  // Reconstruction f = Σ Λ_i* (Λ_i S⁻¹) f.
  std::mt19937_64 rng(5);
  const Vector f = random_complex_gaussian(2, 1, rng).col(0);
  Vector back = Vector::Zero(2);
  for (std::size_t i = 0; i < dual.size(); ++i) back += family[i].matrix().adjoint() * dual[i].matrix() * f;
  CHECK((back - f).norm() < 1e-14 * f.norm());
}

TEST_CASE("canonical dual of a non-frame reports the lower bound") {
  const GFrameFamily degenerate({diag_op({1.0, 0.0})});
  try {
    canonical_dual(degenerate);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(e.value() == doctest::Approx(0.0));
  }
}

TEST_CASE("frame bounds match term-by-term eigenvalues") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GFrameFamily family = random_mixed_family(6, 5, 3, seed);
    const Eigen::VectorXd ev = frame_operator_eigenvalues(family);
    const FrameBounds b = frame_bounds(family);
    CHECK(std::abs(b.lower - ev.minCoeff()) < 1e-12);
    CHECK(std::abs(b.upper - ev.maxCoeff()) < 1e-12);
  }
}

TEST_CASE("Riesz bounds: overcomplete families have lower bound 0") {
  CHECK(riesz_bounds(id_and_diag()).lower == 0.0);
  const FrameBounds single = riesz_bounds(GFrameFamily({diag_op({2.0, 0.5})}));
  CHECK(std::abs(single.lower - 0.25) < 1e-14);
  CHECK(std::abs(single.upper - 4.0) < 1e-14);
}

TEST_CASE("classification of standard examples") {
  SUBCASE("{Id} is g-orthonormal") {
    const Classification c = classify(GFrameFamily({Operator::identity(3)}));
    CHECK(c.is_g_orthonormal);
    CHECK(c.is_g_riesz_basis);
    CHECK(c.is_g_frame);
  }
  SUBCASE("{diag(1,0), diag(0,1)} is Parseval but not g-orthonormal") {
    const Classification c = classify(GFrameFamily({diag_op({1.0, 0.0}), diag_op({0.0, 1.0})}));
    CHECK(c.is_g_frame);
    CHECK(c.parseval_defect < 1e-15);
    CHECK_FALSE(c.is_g_riesz_sequence);
    CHECK_FALSE(c.is_g_orthonormal);
  }
  SUBCASE("{Id, diag(1/2,1/3)} is a g-frame, not a g-Riesz sequence") {
    const Classification c = classify(id_and_diag());
    CHECK(c.is_g_frame);
    CHECK(c.is_g_complete);
    CHECK_FALSE(c.is_g_riesz_sequence);
  }
  SUBCASE("rank-deficient family is Bessel only") {
    const Classification c = classify(GFrameFamily({diag_op({1.0, 0.0}), diag_op({2.0, 0.0})}));
    CHECK(c.is_g_bessel);
    CHECK_FALSE(c.is_g_frame);
    CHECK_FALSE(c.is_g_complete);
  }
  SUBCASE("rows of a unitary are g-orthonormal") {
    CHECK(classify(build_g_orthonormal(6, 2, 9)).is_g_orthonormal);
  }
}

TEST_CASE("lift to a vector frame preserves the bounds") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GFrameFamily family = random_mixed_family(5, 4, 3, seed + 100);
    std::vector<Matrix> onbs;
    for (const auto& m : family.members()) onbs.push_back(random_unitary(m.cod_dim(), rng));
    const FrameBounds lifted = vector_frame_bounds(lift_to_frame(family, onbs));
    const FrameBounds direct = frame_bounds(family);
    CHECK(std::abs(lifted.lower - direct.lower) < 1e-12);
    CHECK(std::abs(lifted.upper - direct.upper) < 1e-12);
  }
  const Matrix lifted_s = [] {
    const GFrameFamily family = geometric_family();
    std::vector<Matrix> identities(family.size(), Matrix::Identity(2, 2));
    Matrix acc = Matrix::Zero(2, 2);
    for (const Vector& v : lift_to_frame(family, identities)) acc += v * v.adjoint();
    return acc;
  }();
  CHECK(std::abs(lifted_s(0, 0) - 4.0 / 3.0) < 1e-14);
  CHECK(std::abs(lifted_s(1, 1) - 9.0 / 8.0) < 1e-14);

  const GFrameFamily family = id_and_diag();
  CHECK_THROWS_AS(lift_to_frame(family, {Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)}), PreconditionError);
}

TEST_CASE("g-orthonormal lifts to an orthonormal basis") {
  const GFrameFamily onb = build_g_orthonormal(4, 2, 17);
  const auto vectors = lift_to_frame(onb, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  REQUIRE(vectors.size() == 4);
  Matrix gram(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram(i, j) = vectors[i].dot(vectors[j]);
  CHECK((gram - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("frame_to_gframe uses rows f_i*") {
  Vector f(2);
  f << Complex(1.0, 1.0), Complex(0.0, 2.0);
  const GFrameFamily family = frame_to_gframe({f});
  const Vector g = Vector::Ones(2);
  CHECK(std::abs((family[0].matrix() * g)(0) - f.dot(g)) < 1e-15);
}

TEST_CASE("transition operator recovers V") {
  std::mt19937_64 rng(8);
  const GFrameFamily onb = build_g_orthonormal(4, 2, 4);
  const Matrix v = random_complex_gaussian(4, 4, rng);
  std::vector<Operator> members;
  for (const auto& m : onb.members()) members.emplace_back(m.matrix() * v.adjoint());
  const Operator recovered = transition_operator(GFrameFamily(members), onb);
  CHECK((recovered.matrix() - v).norm() < 1e-12 * v.norm());
  CHECK_THROWS_AS(transition_operator(GFrameFamily(members), GFrameFamily({Operator(Matrix::Identity(2, 4)), Operator(Matrix::Identity(2, 4))})), PreconditionError);
}

TEST_CASE("mixed operator of two g-orthonormal bases is unitary") {
  const Operator u = mixed_frame_operator(build_g_orthonormal(6, 3, 1), build_g_orthonormal(6, 3, 2));
  CHECK((u.matrix().adjoint() * u.matrix() - Matrix::Identity(6, 6)).norm() < 1e-12);
}
