#include <doctest.h>

#include <cmath>

#include "gframe/errors.hpp"
#include "gframe/frame_core.hpp"
#include "gframe/linalg.hpp"
#include "gframe/representation.hpp"
#include "support.hpp"

using namespace gframe;
using namespace gframe::testing;

TEST_CASE("compact example bounds") {
  SUBCASE("alpha = 0 collapses to the identity") {
    const auto [family, t] = build_compact_example(0.0, 3, 5);
    const FrameBounds b = frame_bounds(family);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("alpha = 1/2 at depth 30") {
    const FrameBounds b = frame_bounds(build_compact_example(0.5, 4, 30).first);
    CHECK(std::abs(b.lower - 1.0) < 1e-15);
    CHECK(std::abs(b.upper - 4.0 / 3.0) < 1e-15);
  }
  SUBCASE("closed form (1 − α^{2·depth})/(1 − α²)") {
    for (double alpha : {0.1, 0.5, 0.9}) {
      for (int depth : {2, 5, 20, 60}) {
        const FrameBounds b = frame_bounds(build_compact_example(alpha, 4, depth).first);
        const double limit = 1.0 / (1.0 - alpha * alpha);
        CHECK(std::abs(b.upper - (1.0 - std::pow(alpha, 2 * depth)) * limit) < 1e-13);
        CHECK(std::abs(b.upper - limit) <= std::pow(alpha, 2 * depth) * limit + 1e-13);
      }
    }
  }
  SUBCASE("rank one generator and preconditions") {
    const auto [family, t] = build_compact_example(0.3, 4, 4);
    CHECK(linalg::numerical_rank(t.matrix(), 1e-12) == 1);
    CHECK_THROWS_AS(build_compact_example(1.0, 4, 4), DomainError);
    CHECK_THROWS_AS(build_compact_example(0.5, 1, 4), DomainError);
  }
}

TEST_CASE("g-orthonormal builder") {
  const GFrameFamily onb = build_g_orthonormal(4, 2, 3);
  CHECK(classify(onb).is_g_orthonormal);
  // Gram condition on standard basis vectors: Λ_i Λ_j* = δ_ij I.
  for (std::size_t i = 0; i < onb.size(); ++i) {
    for (std::size_t j = 0; j < onb.size(); ++j) {
      const Matrix g = onb[i].matrix() * onb[j].matrix().adjoint();
      const Matrix expected = i == j ? Matrix(Matrix::Identity(2, 2)) : Matrix(Matrix::Zero(2, 2));
      CHECK((g - expected).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(build_g_orthonormal(5, 2, 0), DomainError);
}

TEST_CASE("random g-frames") {
  SUBCASE("determinism") {
    const GFrameFamily a = build_random_g_frame(random_spec(5, 2, 4, 77));
    const GFrameFamily b = build_random_g_frame(random_spec(5, 2, 4, 77));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].matrix() == b[i].matrix());
  }
  SUBCASE("too few rows is always rejected") {
    CHECK_THROWS_AS(build_random_g_frame(random_spec(8, 1, 4, 0)), NumericalError);
  }
  SUBCASE("typical shapes are g-frames") {
    int frames = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      if (classify(build_random_g_frame(random_spec(8, 2, 8, seed))).is_g_frame) ++frames;
    }
    CHECK(frames >= 990);
  }
}

TEST_CASE("companion matrix has the requested spectrum") {
  const Matrix c = companion_matrix({0.0, 0.5, 0.25});
  Eigen::ComplexEigenSolver<Matrix> es(c);
  std::vector<double> ev;
  for (Index k = 0; k < 3; ++k) ev.push_back(es.eigenvalues()(k).real());
  std::sort(ev.begin(), ev.end());
  CHECK(std::abs(ev[0]) < 1e-12);
  CHECK(std::abs(ev[1] - 0.25) < 1e-12);
  CHECK(std::abs(ev[2] - 0.5) < 1e-12);
  CHECK(c(1, 0) == Complex(1.0));
}

TEST_CASE("Riesz bridge example") {
  SUBCASE("n = 2, contraction 1/2") {
    const RieszBridge bridge = build_riesz_bridge_example(2, 0.5);
    // Krylov basis {f_1, C f_1} must be independent: Vandermonde-style determinant.
    Matrix k(2, 2);
    k.col(0) = bridge.f1;
    k.col(1) = bridge.generator.matrix() * bridge.f1;
    CHECK(std::abs(k.determinant()) > 1e-6);

    const Classification c = classify(bridge.family);
    CHECK(c.is_g_riesz_basis);
    const RepresentationFit fit = fit_representation(bridge.family);
    CHECK(fit.max_residual < 1e-10);
    CHECK(representation_residuals(bridge.family, bridge.representation)[0] < 1e-10);
    CHECK(linalg::singular_values(bridge.representation.matrix()).minCoeff() < 1e-12);

    const InjectivityReport inj = injectivity_report(bridge.family, bridge.representation);
    CHECK_FALSE(inj.injective);
    CHECK_FALSE(inj.cond_ii);
    CHECK_FALSE(inj.cond_iii);
  }
  SUBCASE("larger n") {
    const RieszBridge bridge = build_riesz_bridge_example(5, 0.6, 3);
    CHECK(classify(bridge.family).is_g_riesz_basis);
    CHECK(injectivity_report(bridge.family, bridge.representation).verdicts_agree);
  }
  SUBCASE("contraction must lie in (0, 1)") {
    CHECK_THROWS_AS(build_riesz_bridge_example(3, 1.0), DomainError);
  }
}

TEST_CASE("ensemble dispatch and validation") {
  EnsembleSpec spec;
  spec.dom_dim = 4;
  spec.kind = EnsembleKind::compact_example;
  spec.alpha = 0.5;
  spec.member_count = 30;
  CHECK(std::abs(frame_bounds(build_ensemble(spec)).upper - 4.0 / 3.0) < 1e-15);

  spec.kind = EnsembleKind::dynamical;
  spec.cod_dim = 2;
  spec.contraction = 0.5;
  const GFrameFamily dyn = build_ensemble(spec);
  CHECK(dyn.size() == 30);
  CHECK(fit_representation(dyn).exact.verdict);

  spec.kind = EnsembleKind::compact_example;
  spec.alpha = 1.5;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK(ensemble_kind_from_string("g_orthonormal") == EnsembleKind::g_orthonormal);
  CHECK_THROWS_AS(ensemble_kind_from_string("nope"), DomainError);
}
