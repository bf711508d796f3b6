#pragma once

// Reference builders: the compact-generator example, g-orthonormal bases, seeded random
// ensembles and the Krylov (Riesz basis) bridge example.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gframe/types.hpp"

namespace gframe {

enum class EnsembleKind { random_gaussian, g_orthonormal, dynamical, compact_example };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

struct EnsembleSpec {
  Index dom_dim = 2;
  Index cod_dim = 1;
  /// Number of members; for dynamical and compact_example this is the truncation depth.
  int member_count = 2;
  EnsembleKind kind = EnsembleKind::random_gaussian;
  std::uint64_t seed = 0;
  /// compact_example only; |alpha| < 1.
  double alpha = 0.5;
  /// dynamical only: seed of Λ_1 and spectral norm of the random generator T.
  std::uint64_t lambda1_seed = 0;
  double contraction = 0.5;
  /// random_gaussian only: per-member codomain dimensions overriding cod_dim.
  std::vector<Index> cod_dims;

  void validate() const;
};

/// Standard complex Gaussian matrix (real and imaginary parts N(0, 1/2)).
Matrix random_complex_gaussian(Index rows, Index cols, std::mt19937_64& rng);

/// Haar-distributed unitary.
Matrix random_unitary(Index n, std::mt19937_64& rng);

/// Λ_1 = Id on ℂⁿ and T: (a_1, ..., a_n) ↦ (α a_1, 0, ..., 0), family truncated at depth.
std::pair<GFrameFamily, Operator> build_compact_example(double alpha, Index n, int depth);

/// Rows of a random unitary sliced into n/m blocks of m rows.
GFrameFamily build_g_orthonormal(Index dom_dim, Index block_dim, std::uint64_t seed);

/// Independent Gaussian members scaled by 1/√(count·cod_dim); redrawn while the lower
/// frame bound is below 1e-6. Throws NumericalError after the retry budget.
GFrameFamily build_random_g_frame(const EnsembleSpec& spec);

/// Dispatches on spec.kind.
GFrameFamily build_ensemble(const EnsembleSpec& spec);

/// Random T with ‖T‖₂ = contraction.
Operator random_contraction(Index n, double contraction, std::mt19937_64& rng);

struct RieszBridge {
  GFrameFamily family;
  /// The representing operator (the adjoint of the Krylov generator); singular by construction.
  Operator representation;
  /// Generator of the Krylov basis {T^{i-1} f_1}.
  Operator generator;
  Vector f1;
};

/// Riesz basis {T^{i-1} f_1}_{i=1..n} of ℂⁿ from the companion matrix of
/// x·Π_{k=1}^{n-1}(x − c^k), turned into a g-Riesz basis of functionals.
RieszBridge build_riesz_bridge_example(Index n, double contraction, std::uint64_t seed = 0);

/// Companion matrix C with C e_i = e_{i+1} whose characteristic polynomial has the given roots.
Matrix companion_matrix(const std::vector<Complex>& roots);

}  // namespace gframe
