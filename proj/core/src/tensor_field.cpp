#include "divdiv/tensor_field.hpp"

#include <sstream>
#include <stdexcept>

namespace divdiv {

std::size_t entry_count(Shape s) {
  switch (s) {
    case Shape::scalar: return 1;
    case Shape::vector: return 3;
    case Shape::matrix: return 9;
  }
  return 0;
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::scalar: return "scalar";
    case Shape::vector: return "vector";
    case Shape::matrix: return "matrix";
  }
  return "?";
}

std::string to_string(SymmetryTag t) {
  switch (t) {
    case SymmetryTag::general: return "general";
    case SymmetryTag::symmetric: return "symmetric";
    case SymmetryTag::traceless: return "traceless";
    case SymmetryTag::skew: return "skew";
  }
  return "?";
}

TensorField TensorField::zero(Shape s) { return {s, std::vector<Polynomial>(entry_count(s)), SymmetryTag::general}; }

TensorField TensorField::scalar(Polynomial p) { return {Shape::scalar, {std::move(p)}, SymmetryTag::general}; }

TensorField TensorField::vector(std::array<Polynomial, 3> v) {
  return {Shape::vector, std::vector<Polynomial>(v.begin(), v.end()), SymmetryTag::general};
}

TensorField TensorField::matrix(std::array<Polynomial, 9> m, SymmetryTag tag) {
  TensorField f(Shape::matrix, std::vector<Polynomial>(m.begin(), m.end()), SymmetryTag::general);
  f.with_tag(tag);
  return f;
}

bool TensorField::satisfies(SymmetryTag tag) const {
  if (tag == SymmetryTag::general) return true;
  if (shape_ != Shape::matrix) return false;
  const auto& e = entries_;
  switch (tag) {
    case SymmetryTag::symmetric:
      return e[1] == e[3] && e[2] == e[6] && e[5] == e[7];
    case SymmetryTag::traceless:
      return (e[0] + e[4] + e[8]).is_zero();
    case SymmetryTag::skew:
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
      return true;
    case SymmetryTag::general:
      return true;
  }
  return false;
}

TensorField& TensorField::with_tag(SymmetryTag tag) {
  if (!satisfies(tag)) throw std::invalid_argument("field does not satisfy tag " + divdiv::to_string(tag));
  tag_ = tag;
  return *this;
}

bool TensorField::is_zero() const {
  for (const auto& p : entries_)
    if (!p.is_zero()) return false;
  return true;
}

int TensorField::degree() const {
  int d = -1;
  for (const auto& p : entries_) d = std::max(d, p.degree());
  return d;
}

TensorField TensorField::restrict_affine(AffinePullback& pull) const {
  TensorField out = *this;
  for (auto& p : out.entries_) p = pull.apply(p);
  return out;
}

TensorField& TensorField::add_scaled(const TensorField& o, const Rational& s) {
  if (o.shape_ != shape_) throw std::invalid_argument("shape mismatch in field sum");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k].add_scaled(o.entries_[k], s);
  if (tag_ != o.tag_) tag_ = SymmetryTag::general;
  return *this;
}

TensorField& TensorField::operator+=(const TensorField& o) { return add_scaled(o, 1); }
TensorField& TensorField::operator-=(const TensorField& o) { return add_scaled(o, -1); }

TensorField& TensorField::operator*=(const Rational& s) {
  for (auto& p : entries_) p *= s;
  return *this;
}

TensorField operator*(const Polynomial& p, const TensorField& a) {
  TensorField out = a;
  for (auto& e : out.entries_) e = p * e;
  return out;
}

bool operator==(const TensorField& a, const TensorField& b) {
  return a.shape_ == b.shape_ && a.entries_ == b.entries_;
}

std::string TensorField::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) os << (shape_ == Shape::matrix && k % 3 == 0 ? "; " : ", ");
    os << entries_[k].to_string();
  }
  os << "]";
  return os.str();
}

Mat3 identity3() {
  Mat3 m;
  for (auto& v : m) v = 0;
  m[0] = m[4] = m[8] = 1;
  return m;
}

TensorField constant_matrix_field(const Mat3& m, SymmetryTag tag) {
  std::array<Polynomial, 9> e;
  for (std::size_t k = 0; k < 9; ++k) e[k] = Polynomial(m[k]);
  return TensorField::matrix(e, tag);
}

TensorField constant_vector_field(const Vec3& v) {
  return TensorField::vector({Polynomial(v[0]), Polynomial(v[1]), Polynomial(v[2])});
}

}  // namespace divdiv
