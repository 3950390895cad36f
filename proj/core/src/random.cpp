#include "divdiv/random.hpp"

#include "divdiv/operators.hpp"

namespace divdiv {

int RationalRng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

Rational RationalRng::next() {
  Rational r(uniform_int(-bound_, bound_), uniform_int(1, bound_));
  r.canonicalize();
  return r;
}

Rational RationalRng::next_nonzero() {
  for (;;) {
    Rational r = next();
    if (sgn(r) != 0) return r;
  }
}

Vec3 RationalRng::vec3() { return {next(), next(), next()}; }

Polynomial RationalRng::polynomial(int deg, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<Polynomial::Term> terms;
  for (const auto& m : monomials_total_degree(deg))
    if (keep(gen_)) terms.push_back({m.pack(), next_nonzero()});
  return Polynomial::from_terms(std::move(terms));
}

TensorField RationalRng::field(Shape shape, int deg, SymmetryTag tag) {
  switch (shape) {
    case Shape::scalar: return TensorField::scalar(polynomial(deg));
    case Shape::vector: return TensorField::vector({polynomial(deg), polynomial(deg), polynomial(deg)});
    case Shape::matrix: break;
  }
  std::array<Polynomial, 9> m;
  for (auto& p : m) p = polynomial(deg);
  const TensorField u = TensorField::matrix(m);
  switch (tag) {
    case SymmetryTag::general: return u;
    case SymmetryTag::symmetric: return sym(u);
    case SymmetryTag::traceless: return dev(u);
    case SymmetryTag::skew: return skw(u);
  }
  return u;
}

std::array<Vec3, 4> RationalRng::tetrahedron() {
  for (;;) {
    std::array<Vec3, 4> x{vec3(), vec3(), vec3(), vec3()};
    const Rational vol = dot(x[1] - x[0], cross(x[2] - x[0], x[3] - x[0]));
    if (sgn(vol) == 0) continue;
    if (sgn(vol) < 0) std::swap(x[2], x[3]);
    return x;
  }
}

}  // namespace divdiv
