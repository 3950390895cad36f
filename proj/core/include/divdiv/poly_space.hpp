#pragma once

#include "divdiv/matrix.hpp"
#include "divdiv/tensor_field.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace divdiv {

/// Degree constraints of a scalar monomial space.
struct DegreeSpec {
  enum class Kind { total, per_variable, mixed };
  Kind kind = Kind::total;
  std::array<int, 3> k{0, 0, 0};

  static DegreeSpec total(int k) { return {Kind::total, {k, k, k}}; }
  static DegreeSpec per_variable(int k) { return {Kind::per_variable, {k, k, k}}; }
  static DegreeSpec mixed(int k1, int k2, int k3) { return {Kind::mixed, {k1, k2, k3}}; }

  /// Monomials in graded-lexicographic order; empty if any degree is negative.
  std::vector<MultiIndex> monomials() const;
  std::string describe() const;
};

/// Ordered, linearly independent list of fields of one shape.
class PolySpace {
 public:
  PolySpace() = default;
  PolySpace(Shape shape, SymmetryTag tag, std::string descriptor, std::vector<TensorField> basis);

  Shape shape() const { return shape_; }
  SymmetryTag tag() const { return tag_; }
  const std::string& descriptor() const { return descriptor_; }
  const std::vector<TensorField>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const TensorField& operator[](std::size_t i) const { return basis_[i]; }

  /// sum_i c_i basis_i
  TensorField combine(const RatVector& c) const;

 private:
  Shape shape_ = Shape::scalar;
  SymmetryTag tag_ = SymmetryTag::general;
  std::string descriptor_;
  std::vector<TensorField> basis_;
};

/// Scalar monomial space.
PolySpace span(const DegreeSpec& spec);

/// Vector fields whose component i ranges over the monomials of specs[i].
PolySpace vector_span(const std::array<DegreeSpec, 3>& specs, std::string descriptor);

/// Coordinates of fields in the monomial basis, one coordinate per (entry, monomial) pair.
/// Pairs are numbered in order of first appearance.
class CoefficientLayout {
 public:
  void add(const std::vector<Polynomial>& entries);
  void add(const TensorField& f) { add(f.entries()); }
  std::size_t size() const { return index_.size(); }
  /// Coordinates of the entry list; nullopt if it has a term outside the layout.
  std::optional<RatVector> coordinates(const std::vector<Polynomial>& entries) const;
  std::optional<RatVector> coordinates(const TensorField& f) const { return coordinates(f.entries()); }

 private:
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> index_;
};

/// Matrix whose column j holds the monomial coordinates of fields[j].
RatMatrix coefficient_matrix(const std::vector<TensorField>& fields);

/// Exact rank of the coefficient matrix.
std::size_t field_rank(const std::vector<TensorField>& fields);

/// Indices of a maximal linearly independent sublist, greedy from the front.
std::vector<std::size_t> independent_subset(const std::vector<TensorField>& fields);

/// Exact membership test in the span of a fixed list of fields.
/// The span is reduced once; each query is one forward substitution.
class SpanTester {
 public:
  explicit SpanTester(const std::vector<TensorField>& fields);
  std::size_t rank() const { return pivots_.size(); }
  bool contains(const TensorField& f) const;

 private:
  CoefficientLayout layout_;
  std::vector<std::size_t> pivots_;
  std::vector<RatVector> rows_;
};

}  // namespace divdiv
