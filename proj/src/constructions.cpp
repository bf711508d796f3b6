#include "gframe/constructions.hpp"

#include <cmath>

#include "gframe/errors.hpp"
#include "gframe/frame_core.hpp"
#include "gframe/linalg.hpp"
#include "gframe/representation.hpp"

namespace gframe {
namespace {

constexpr int kMaxRedraws = 100;
constexpr double kMinRandomLowerBound = 1e-6;

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::random_gaussian: return "random_gaussian";
    case EnsembleKind::g_orthonormal: return "g_orthonormal";
    case EnsembleKind::dynamical: return "dynamical";
    case EnsembleKind::compact_example: return "compact_example";
  }
  return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "random_gaussian") return EnsembleKind::random_gaussian;
  if (name == "g_orthonormal") return EnsembleKind::g_orthonormal;
  if (name == "dynamical") return EnsembleKind::dynamical;
  if (name == "compact_example") return EnsembleKind::compact_example;
  throw DomainError("unknown ensemble kind '" + name + "'");
}

void EnsembleSpec::validate() const {
  if (dom_dim <= 0 || cod_dim <= 0 || member_count <= 0) throw DomainError("ensemble dimensions must be positive");
  for (Index m : cod_dims) {
    if (m <= 0) throw DomainError("ensemble codomain dimensions must be positive");
  }
  if (!cod_dims.empty() && static_cast<int>(cod_dims.size()) != member_count) {
    throw DomainError("cod_dims must list one dimension per member");
  }
  if (kind == EnsembleKind::compact_example && !(std::abs(alpha) < 1.0)) throw DomainError("compact example needs |alpha| < 1");
  if (kind == EnsembleKind::g_orthonormal && dom_dim % cod_dim != 0) {
    throw DomainError("g-orthonormal ensemble needs cod_dim dividing dom_dim");
  }
  if (kind == EnsembleKind::dynamical && !(contraction >= 0.0)) throw DomainError("contraction must be nonnegative");
}

Matrix random_complex_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

Matrix random_unitary(Index n, std::mt19937_64& rng) {
  const Matrix g = random_complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Operator random_contraction(Index n, double contraction, std::mt19937_64& rng) {
  const Matrix g = random_complex_gaussian(n, n, rng);
  return Operator(g * (contraction / linalg::spectral_norm(g)));
}

std::pair<GFrameFamily, Operator> build_compact_example(double alpha, Index n, int depth) {
  if (!(std::abs(alpha) < 1.0)) throw DomainError("compact example requires |alpha| < 1");
  if (n < 2) throw DomainError("compact example requires dimension n >= 2");
  if (depth < 2) throw DomainError("compact example requires depth >= 2");
  Matrix t = Matrix::Zero(n, n);
  t(0, 0) = alpha;
  Operator t_op(std::move(t));
  return {generate_family(Operator::identity(n), t_op, depth), t_op};
}

GFrameFamily build_g_orthonormal(Index dom_dim, Index block_dim, std::uint64_t seed) {
  if (block_dim <= 0 || dom_dim <= 0 || dom_dim % block_dim != 0) {
    throw DomainError("block dimension must divide the domain dimension");
  }
  std::mt19937_64 rng(seed);
  const Matrix q = random_unitary(dom_dim, rng);
  std::vector<Operator> members;
  for (Index row = 0; row < dom_dim; row += block_dim) members.emplace_back(Matrix(q.middleRows(row, block_dim)));
  return GFrameFamily(std::move(members));
}

GFrameFamily build_random_g_frame(const EnsembleSpec& spec) {
  spec.validate();
  std::vector<Index> dims = spec.cod_dims;
  if (dims.empty()) dims.assign(static_cast<std::size_t>(spec.member_count), spec.cod_dim);
  Index total = 0;
  for (Index m : dims) total += m;
  if (total < spec.dom_dim) {
    throw NumericalError("random g-frame rejection limit exceeded: total codomain dimension " + std::to_string(total) +
                         " is below dim H = " + std::to_string(spec.dom_dim));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(total));

  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<Operator> members;
    members.reserve(dims.size());
    for (Index m : dims) members.emplace_back(random_complex_gaussian(m, spec.dom_dim, rng) * scale);
    GFrameFamily family(std::move(members));
    if (frame_bounds(family).lower >= kMinRandomLowerBound) return family;
  }
  throw NumericalError("random g-frame rejection limit exceeded");
}

GFrameFamily build_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::random_gaussian:
      return build_random_g_frame(spec);
    case EnsembleKind::g_orthonormal:
      return build_g_orthonormal(spec.dom_dim, spec.cod_dim, spec.seed);
    case EnsembleKind::compact_example:
      return build_compact_example(spec.alpha, spec.dom_dim, spec.member_count).first;
    case EnsembleKind::dynamical: {
      std::mt19937_64 lambda_rng(spec.lambda1_seed);
      const Operator lambda1(random_complex_gaussian(spec.cod_dim, spec.dom_dim, lambda_rng) /
                             std::sqrt(static_cast<double>(spec.cod_dim)));
      std::mt19937_64 t_rng(spec.seed);
      return generate_family(lambda1, random_contraction(spec.dom_dim, spec.contraction, t_rng), spec.member_count);
    }
  }
  throw DomainError("unknown ensemble kind");
}

Matrix companion_matrix(const std::vector<Complex>& roots) {
  const auto n = static_cast<Index>(roots.size());
  if (n == 0) throw DomainError("companion matrix needs at least one root");
  // Coefficients of Π(x − r_k), lowest degree first, leading coefficient 1.
  std::vector<Complex> coeffs{Complex(1.0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(coeffs.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= r * coeffs[k];
    }
    coeffs = std::move(next);
  }
  Matrix c = Matrix::Zero(n, n);
  for (Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (Index i = 0; i < n; ++i) c(i, n - 1) = -coeffs[static_cast<std::size_t>(i)];
  return c;
}

RieszBridge build_riesz_bridge_example(Index n, double contraction, std::uint64_t seed) {
  if (!(contraction > 0.0 && contraction < 1.0)) throw DomainError("contraction must lie in (0, 1)");
  if (n < 2) throw DomainError("bridge example requires n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
  constexpr int kAttempts = 20;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Complex> roots{Complex(0.0)};
    for (Index k = 1; k < n; ++k) {
      double r = std::pow(contraction, static_cast<double>(k));
      if (attempt > 0) r *= 1.0 + jitter(rng);
      roots.emplace_back(r);
    }
    const Matrix c = companion_matrix(roots);
    const Vector f1 = random_complex_gaussian(n, 1, rng).col(0).normalized();
    std::vector<Vector> krylov;
    Vector v = f1;
    Matrix k(n, n);
    for (Index i = 0; i < n; ++i) {
      krylov.push_back(v);
      k.col(i) = v;
      v = c * v;
    }
    const RealVector sv = linalg::singular_values(k);
    if (!(sv(n - 1) > 1e-10 * sv(0))) continue;
    return RieszBridge{
        .family = frame_to_gframe(krylov),
        .representation = Operator(c.adjoint()),
        .generator = Operator(c),
        .f1 = f1,
    };
  }
  throw NumericalError("bridge construction failed: Krylov basis stayed degenerate");
}

}  // namespace gframe
