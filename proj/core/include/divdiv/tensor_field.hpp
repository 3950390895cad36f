#pragma once

#include "divdiv/polynomial.hpp"

#include <array>
#include <string>
#include <vector>

namespace divdiv {

enum class Shape { scalar, vector, matrix };
enum class SymmetryTag { general, symmetric, traceless, skew };

std::size_t entry_count(Shape s);
std::string to_string(Shape s);
std::string to_string(SymmetryTag t);

/// Scalar, vector or 3x3 matrix field of polynomials. Matrix entries are stored
/// row-major, so entry (i, j) lives at index 3 i + j.
class TensorField {
 public:
  TensorField() : shape_(Shape::scalar), entries_(1) {}

  static TensorField zero(Shape s);
  static TensorField scalar(Polynomial p);
  static TensorField vector(std::array<Polynomial, 3> v);
  static TensorField matrix(std::array<Polynomial, 9> m, SymmetryTag tag = SymmetryTag::general);

  Shape shape() const { return shape_; }
  SymmetryTag tag() const { return tag_; }
  /// Attaches a tag after checking that the entries satisfy it; throws otherwise.
  TensorField& with_tag(SymmetryTag tag);
  bool satisfies(SymmetryTag tag) const;

  std::size_t size() const { return entries_.size(); }
  const Polynomial& operator[](std::size_t k) const { return entries_[k]; }
  Polynomial& operator[](std::size_t k) {
    tag_ = SymmetryTag::general;
    return entries_[k];
  }
  const Polynomial& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(3 * i + j)]; }
  const Polynomial& value() const { return entries_[0]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  bool is_zero() const;
  /// Maximal total degree over the entries; -1 for the zero field.
  int degree() const;
  TensorField restrict_affine(AffinePullback& pull) const;

  TensorField& operator+=(const TensorField& o);
  TensorField& operator-=(const TensorField& o);
  TensorField& operator*=(const Rational& s);
  TensorField& add_scaled(const TensorField& o, const Rational& s);

  friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
  friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
  friend TensorField operator*(TensorField a, const Rational& s) { return a *= s; }
  friend TensorField operator*(const Rational& s, TensorField a) { return a *= s; }
  /// Entrywise product with a scalar polynomial.
  friend TensorField operator*(const Polynomial& p, const TensorField& a);
  friend bool operator==(const TensorField& a, const TensorField& b);

  std::string to_string() const;

 private:
  TensorField(Shape s, std::vector<Polynomial> e, SymmetryTag t) : shape_(s), tag_(t), entries_(std::move(e)) {}

  Shape shape_;
  SymmetryTag tag_ = SymmetryTag::general;
  std::vector<Polynomial> entries_;
};

/// Constant matrix with rational entries, row-major.
using Mat3 = std::array<Rational, 9>;

Mat3 identity3();
TensorField constant_matrix_field(const Mat3& m, SymmetryTag tag = SymmetryTag::general);
TensorField constant_vector_field(const Vec3& v);

}  // namespace divdiv
