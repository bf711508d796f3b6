#pragma once

// Shared fixtures and independent oracles for the test binaries. The oracles avoid the
// library's own code paths: they sample, brute-force, or build matrices entry by entry.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gframe/constructions.hpp"
#include "gframe/frame_core.hpp"
#include "gframe/types.hpp"

namespace gframe::testing {

inline Operator diag_op(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Index>(d.size()));
  Index k = 0;
  for (double x : d) v(k++) = x;
  return Operator::from_real(v.asDiagonal().toDenseMatrix());
}

inline Operator rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return Operator::from_real(r);
}

inline Vector random_unit_vector(Index n, std::mt19937_64& rng) {
  return random_complex_gaussian(n, 1, rng).col(0).normalized();
}

/// Member-by-member energy Σ‖Λ_i f‖², evaluated without any stacking.
inline double energy(const GFrameFamily& family, const Vector& f) {
  double e = 0.0;
  for (const auto& m : family.members()) e += (m.matrix() * f).squaredNorm();
  return e;
}

/// Min and max of the energy over random unit vectors.
inline FrameBounds rayleigh_sampled_bounds(const GFrameFamily& family, int samples, std::mt19937_64& rng) {
  FrameBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (int s = 0; s < samples; ++s) {
    const double e = energy(family, random_unit_vector(family.dom_dim(), rng));
    b.lower = std::min(b.lower, e);
    b.upper = std::max(b.upper, e);
  }
  return b;
}

/// Min and max of ‖Σ Λ_i* g_i‖² over random unit coefficient families.
inline FrameBounds brute_force_riesz_bounds(const GFrameFamily& family, int samples, std::mt19937_64& rng) {
  FrameBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (int s = 0; s < samples; ++s) {
    std::vector<Vector> blocks;
    double total = 0.0;
    for (const auto& m : family.members()) {
      blocks.push_back(random_complex_gaussian(m.cod_dim(), 1, rng).col(0));
      total += blocks.back().squaredNorm();
    }
    Vector sum = Vector::Zero(family.dom_dim());
    for (std::size_t i = 0; i < blocks.size(); ++i) sum += family[i].matrix().adjoint() * (blocks[i] / std::sqrt(total));
    const double e = sum.squaredNorm();
    b.lower = std::min(b.lower, e);
    b.upper = std::max(b.upper, e);
  }
  return b;
}

/// Dense eigenvalues of the frame operator assembled term by term.
inline Eigen::VectorXd frame_operator_eigenvalues(const GFrameFamily& family) {
  Matrix s = Matrix::Zero(family.dom_dim(), family.dom_dim());
  for (const auto& m : family.members()) s += m.matrix().adjoint() * m.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  return es.eigenvalues();
}

/// Family scaled by c: every member multiplied by c.
inline GFrameFamily scaled(const GFrameFamily& family, double c) {
  std::vector<Operator> out;
  for (const auto& m : family.members()) out.push_back(Complex(c) * m);
  return GFrameFamily(std::move(out), family.extent());
}

inline EnsembleSpec random_spec(Index n, Index m, int count, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.dom_dim = n;
  spec.cod_dim = m;
  spec.member_count = count;
  spec.kind = EnsembleKind::random_gaussian;
  spec.seed = seed;
  return spec;
}

/// Random g-frame with per-member codomain dimensions drawn from [1, max_cod].
inline GFrameFamily random_mixed_family(Index n, int count, Index max_cod, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(1, max_cod);
  EnsembleSpec spec = random_spec(n, 1, count, seed);
  Index total = 0;
  for (int i = 0; i < count; ++i) {
    spec.cod_dims.push_back(pick(rng));
    total += spec.cod_dims.back();
  }
  if (total < n) spec.cod_dims.back() += n - total;
  return build_random_g_frame(spec);
}

}  // namespace gframe::testing
