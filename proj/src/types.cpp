#include "gframe/types.hpp"

#include <string>
#include <utility>

#include "gframe/errors.hpp"
#include "gframe/linalg.hpp"

namespace gframe {

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() <= 0 || entries_.cols() <= 0) {
    throw DimensionError("operator must have positive dimensions, got " + std::to_string(entries_.rows()) +
                         "x" + std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) throw DomainError("operator entries must be finite");
}

Operator Operator::identity(Index n) { return Operator(Matrix::Identity(n, n)); }

Operator Operator::zero(Index cod_dim, Index dom_dim) { return Operator(Matrix::Zero(cod_dim, dom_dim)); }

Operator Operator::from_real(const Eigen::MatrixXd& entries) { return Operator(entries.cast<Complex>()); }

Operator Operator::adjoint() const { return Operator(entries_.adjoint()); }

double Operator::norm() const { return linalg::spectral_norm(entries_); }

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dom_dim() != b.cod_dim()) throw DimensionError("composition of non-conforming operators");
  return Operator(a.entries_ * b.entries_);
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) throw DimensionError("sum of differently shaped operators");
  return Operator(a.entries_ + b.entries_);
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) {
    throw DimensionError("difference of differently shaped operators");
  }
  return Operator(a.entries_ - b.entries_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.entries_); }

GFrameFamily::GFrameFamily(std::vector<Operator> members, Extent extent)
    : members_(std::move(members)), extent_(extent) {
  if (members_.empty()) throw DimensionError("a family needs at least one member");
  const Index n = members_.front().dom_dim();
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (members_[i].dom_dim() != n) throw DimensionError("members must share the domain dimension", i);
  }
}

Index GFrameFamily::total_cod_dim() const {
  Index total = 0;
  for (const auto& m : members_) total += m.cod_dim();
  return total;
}

std::optional<Index> GFrameFamily::shared_cod_dim() const {
  const Index m = members_.front().cod_dim();
  for (const auto& op : members_) {
    if (op.cod_dim() != m) return std::nullopt;
  }
  return m;
}

Index GFrameFamily::block_offset(std::size_t i) const {
  Index offset = 0;
  for (std::size_t k = 0; k < i; ++k) offset += members_[k].cod_dim();
  return offset;
}

Matrix GFrameFamily::stacked_analysis() const {
  Matrix stacked(total_cod_dim(), dom_dim());
  Index row = 0;
  for (const auto& m : members_) {
    stacked.middleRows(row, m.cod_dim()) = m.matrix();
    row += m.cod_dim();
  }
  return stacked;
}

Matrix GFrameFamily::stacked_synthesis() const { return stacked_analysis().adjoint(); }

GFrameFamily GFrameFamily::slice(std::size_t first, std::size_t last) const {
  if (first >= last || last > members_.size()) throw DimensionError("invalid family slice");
  return GFrameFamily(std::vector<Operator>(members_.begin() + static_cast<std::ptrdiff_t>(first),
                                            members_.begin() + static_cast<std::ptrdiff_t>(last)),
                      extent_);
}

Vector CoefficientFamily::concatenated() const {
  Index total = 0;
  for (const auto& b : blocks) total += b.size();
  Vector flat(total);
  Index pos = 0;
  for (const auto& b : blocks) {
    flat.segment(pos, b.size()) = b;
    pos += b.size();
  }
  return flat;
}

CoefficientFamily CoefficientFamily::split(const Vector& flat, const GFrameFamily& layout) {
  if (flat.size() != layout.total_cod_dim()) throw DimensionError("coefficient vector does not match family layout");
  CoefficientFamily out;
  out.blocks.reserve(layout.size());
  Index pos = 0;
  for (const auto& m : layout.members()) {
    out.blocks.emplace_back(flat.segment(pos, m.cod_dim()));
    pos += m.cod_dim();
  }
  return out;
}

}  // namespace gframe
