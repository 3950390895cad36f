#include "divdiv/operators.hpp"

#include <stdexcept>

namespace divdiv {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

std::array<Polynomial, 3> row(const TensorField& u, int i) { return {u(i, 0), u(i, 1), u(i, 2)}; }

std::array<Polynomial, 3> curl3(const std::array<Polynomial, 3>& v) {
  return {v[2].derivative(1) - v[1].derivative(2), v[0].derivative(2) - v[2].derivative(0),
          v[1].derivative(0) - v[0].derivative(1)};
}

TensorField from_rows(const std::array<std::array<Polynomial, 3>, 3>& r, SymmetryTag tag = SymmetryTag::general) {
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[static_cast<std::size_t>(3 * i + j)] = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return TensorField::matrix(e, tag);
}

}  // namespace

int bar(int n) { return ((n - 1) % 3 + 3) % 3 + 1; }

TensorField grad(const TensorField& f) {
  if (f.shape() == Shape::scalar)
    return TensorField::vector({f.value().derivative(0), f.value().derivative(1), f.value().derivative(2)});
  require(f.shape() == Shape::vector, "grad expects a scalar or vector field");
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[static_cast<std::size_t>(3 * i + j)] = f[static_cast<std::size_t>(i)].derivative(j);
  return TensorField::matrix(e);
}

TensorField div(const TensorField& f) {
  if (f.shape() == Shape::vector) return TensorField::scalar(f[0].derivative(0) + f[1].derivative(1) + f[2].derivative(2));
  require(f.shape() == Shape::matrix, "div expects a vector or matrix field");
  std::array<Polynomial, 3> v;
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = f(i, 0).derivative(0) + f(i, 1).derivative(1) + f(i, 2).derivative(2);
  return TensorField::vector(v);
}

TensorField curl(const TensorField& f) {
  if (f.shape() == Shape::vector) return TensorField::vector(curl3({f[0], f[1], f[2]}));
  require(f.shape() == Shape::matrix, "curl expects a vector or matrix field");
  return from_rows({curl3(row(f, 0)), curl3(row(f, 1)), curl3(row(f, 2))});
}

TensorField transpose(const TensorField& u) {
  require(u.shape() == Shape::matrix, "transpose expects a matrix field");
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[static_cast<std::size_t>(3 * i + j)] = u(j, i);
  return TensorField::matrix(e);
}

TensorField curl_col(const TensorField& u) { return transpose(curl(transpose(u))); }

TensorField div_col(const TensorField& u) {
  require(u.shape() == Shape::matrix, "div_col expects a matrix field");
  return div(transpose(u));
}

TensorField sym(const TensorField& u) {
  require(u.shape() == Shape::matrix, "sym expects a matrix field");
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[static_cast<std::size_t>(3 * i + j)] = (u(i, j) + u(j, i)) * Rational(1, 2);
  return TensorField::matrix(e, SymmetryTag::symmetric);
}

TensorField skw(const TensorField& u) {
  require(u.shape() == Shape::matrix, "skw expects a matrix field");
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[static_cast<std::size_t>(3 * i + j)] = (u(i, j) - u(j, i)) * Rational(1, 2);
  return TensorField::matrix(e, SymmetryTag::skew);
}

TensorField trace(const TensorField& u) {
  require(u.shape() == Shape::matrix, "trace expects a matrix field");
  return TensorField::scalar(u(0, 0) + u(1, 1) + u(2, 2));
}

TensorField dev(const TensorField& u) {
  require(u.shape() == Shape::matrix, "dev expects a matrix field");
  const Polynomial third = trace(u).value() * Rational(1, 3);
  std::array<Polynomial, 9> e;
  for (std::size_t k = 0; k < 9; ++k) e[k] = u[k];
  for (std::size_t k : {0u, 4u, 8u}) e[k] -= third;
  return TensorField::matrix(e, SymmetryTag::traceless);
}

TensorField mspn(const TensorField& v) {
  require(v.shape() == Shape::vector, "mspn expects a vector field");
  return TensorField::matrix({Polynomial(), -v[2], v[1], v[2], Polynomial(), -v[0], -v[1], v[0], Polynomial()},
                             SymmetryTag::skew);
}

TensorField dev_grad(const TensorField& v) {
  require(v.shape() == Shape::vector, "dev_grad expects a vector field");
  return dev(grad(v));
}

TensorField sym_curl(const TensorField& u) {
  require(u.shape() == Shape::matrix, "sym_curl expects a matrix field");
  return sym(curl(u));
}

TensorField div_div(const TensorField& sigma) {
  require(sigma.shape() == Shape::matrix, "div_div expects a matrix field");
  return div(div(sigma));
}

TensorField hessian(const TensorField& q) {
  require(q.shape() == Shape::scalar, "hessian expects a scalar field");
  TensorField h = grad(grad(q));
  return h.with_tag(SymmetryTag::symmetric);
}

TensorField eps(const TensorField& v) { return sym(grad(v)); }

TensorField directional_derivative(const TensorField& f, const Vec3& d) {
  TensorField out = TensorField::zero(f.shape());
  for (std::size_t k = 0; k < f.size(); ++k)
    for (int i = 0; i < 3; ++i)
      if (d[static_cast<std::size_t>(i)] != 0) out[k].add_scaled(f[k].derivative(i), d[static_cast<std::size_t>(i)]);
  if (f.satisfies(f.tag())) out.with_tag(f.tag());
  return out;
}

TensorField mat_vec(const TensorField& u, const Vec3& a) {
  require(u.shape() == Shape::matrix, "mat_vec expects a matrix field");
  std::array<Polynomial, 3> v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[static_cast<std::size_t>(i)].add_scaled(u(i, j), a[static_cast<std::size_t>(j)]);
  return TensorField::vector(v);
}

TensorField vec_mat(const Vec3& a, const TensorField& u) { return mat_vec(transpose(u), a); }

Polynomial contract(const Vec3& a, const TensorField& u, const Vec3& b) {
  require(u.shape() == Shape::matrix, "contract expects a matrix field");
  Polynomial s;
  for (int i = 0; i < 3; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < 3; ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      s.add_scaled(u(i, j), a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]);
    }
  }
  return s;
}

Polynomial dot(const TensorField& v, const Vec3& a) {
  require(v.shape() == Shape::vector, "dot expects a vector field");
  Polynomial s;
  for (std::size_t i = 0; i < 3; ++i) s.add_scaled(v[i], a[i]);
  return s;
}

TensorField cross(const TensorField& v, const Vec3& a) {
  require(v.shape() == Shape::vector, "cross expects a vector field");
  return TensorField::vector({v[1] * a[2] - v[2] * a[1], v[2] * a[0] - v[0] * a[2], v[0] * a[1] - v[1] * a[0]});
}

TensorField mat_mul(const Mat3& a, const TensorField& u) {
  require(u.shape() == Shape::matrix, "mat_mul expects a matrix field");
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Rational& c = a[static_cast<std::size_t>(3 * i + k)];
        if (c != 0) e[static_cast<std::size_t>(3 * i + j)].add_scaled(u(k, j), c);
      }
  return TensorField::matrix(e);
}

TensorField mat_mul(const TensorField& u, const Mat3& a) {
  require(u.shape() == Shape::matrix, "mat_mul expects a matrix field");
  std::array<Polynomial, 9> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Rational& c = a[static_cast<std::size_t>(3 * k + j)];
        if (c != 0) e[static_cast<std::size_t>(3 * i + j)].add_scaled(u(i, k), c);
      }
  return TensorField::matrix(e);
}

Polynomial frobenius(const TensorField& u, const TensorField& w) {
  require(u.shape() == w.shape(), "frobenius shape mismatch");
  Polynomial s;
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * w[k];
  return s;
}

}  // namespace divdiv
