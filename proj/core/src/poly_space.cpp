#include "divdiv/poly_space.hpp"

#include "divdiv/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace divdiv {

std::vector<MultiIndex> DegreeSpec::monomials() const {
  switch (kind) {
    case Kind::total:
      return k[0] < 0 ? std::vector<MultiIndex>{} : monomials_total_degree(k[0]);
    case Kind::per_variable:
    case Kind::mixed:
      return monomials_per_variable(k[0], k[1], k[2]);
  }
  return {};
}

std::string DegreeSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::total: os << "P_" << k[0]; break;
    case Kind::per_variable: os << "Q_" << k[0]; break;
    case Kind::mixed: os << "P_{" << k[0] << "," << k[1] << "," << k[2] << "}"; break;
  }
  return os.str();
}

PolySpace::PolySpace(Shape shape, SymmetryTag tag, std::string descriptor, std::vector<TensorField> basis)
    : shape_(shape), tag_(tag), descriptor_(std::move(descriptor)), basis_(std::move(basis)) {
  for (const auto& f : basis_)
    if (f.shape() != shape_) throw std::invalid_argument("PolySpace: basis field of wrong shape");
}

TensorField PolySpace::combine(const RatVector& c) const {
  if (c.size() != basis_.size()) throw std::invalid_argument("PolySpace::combine: size mismatch");
  TensorField out = TensorField::zero(shape_);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) out.add_scaled(basis_[i], c[i]);
  if (tag_ != SymmetryTag::general) out.with_tag(tag_);
  return out;
}

PolySpace span(const DegreeSpec& spec) {
  std::vector<TensorField> basis;
  for (const auto& m : spec.monomials()) basis.push_back(TensorField::scalar(Polynomial::monomial(m)));
  return {Shape::scalar, SymmetryTag::general, spec.describe(), std::move(basis)};
}

PolySpace vector_span(const std::array<DegreeSpec, 3>& specs, std::string descriptor) {
  std::vector<TensorField> basis;
  for (int i = 0; i < 3; ++i)
    for (const auto& m : specs[i].monomials()) {
      std::array<Polynomial, 3> v;
      v[i] = Polynomial::monomial(m);
      basis.push_back(TensorField::vector(std::move(v)));
    }
  return {Shape::vector, SymmetryTag::general, std::move(descriptor), std::move(basis)};
}

void CoefficientLayout::add(const std::vector<Polynomial>& f) {
  for (std::size_t e = 0; e < f.size(); ++e)
    for (const auto& t : f[e].terms()) index_.try_emplace({e, t.key}, index_.size());
}

std::optional<RatVector> CoefficientLayout::coordinates(const std::vector<Polynomial>& f) const {
  RatVector out(index_.size());
  for (std::size_t e = 0; e < f.size(); ++e)
    for (const auto& t : f[e].terms()) {
      auto it = index_.find({e, t.key});
      if (it == index_.end()) return std::nullopt;
      out[it->second] = t.coeff;
    }
  return out;
}

RatMatrix coefficient_matrix(const std::vector<TensorField>& fields) {
  CoefficientLayout layout;
  for (const auto& f : fields) layout.add(f);
  RatMatrix m(layout.size(), fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    RatVector c = *layout.coordinates(fields[j]);
    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  return m;
}

std::size_t field_rank(const std::vector<TensorField>& fields) {
  if (fields.empty()) return 0;
  return exact_rank(coefficient_matrix(fields).transpose()).rank;
}

std::vector<std::size_t> independent_subset(const std::vector<TensorField>& fields) {
  if (fields.empty()) return {};
  // Pivot columns of the RREF are the greedy independent choice.
  return rref(coefficient_matrix(fields)).pivots;
}

SpanTester::SpanTester(const std::vector<TensorField>& fields) {
  for (const auto& f : fields) layout_.add(f);
  if (fields.empty()) return;
  RatMatrix rows(fields.size(), layout_.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    RatVector c = *layout_.coordinates(fields[i]);
    for (std::size_t j = 0; j < c.size(); ++j) rows(i, j) = c[j];
  }
  RrefResult r = rref(rows);
  pivots_ = r.pivots;
  for (std::size_t i = 0; i < r.rank; ++i) rows_.push_back(r.reduced.row(i));
}

bool SpanTester::contains(const TensorField& f) const {
  auto c = layout_.coordinates(f);
  if (!c) return false;
  RatVector v = std::move(*c);
  // The reduced rows are the identity on the pivot columns, so the residual after
  // subtracting v[p] * row for every pivot p is zero exactly on members.
  RatVector residual = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Rational s = v[pivots_[i]];
    if (sgn(s) == 0) continue;
    const RatVector& row = rows_[i];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (sgn(row[j]) != 0) residual[j] -= s * row[j];
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace divdiv
