#include "divdiv/integration.hpp"

#include <stdexcept>

namespace divdiv {

namespace {

Rational power(const Rational& x, int e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Rational determinant3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

}  // namespace

Rational integrate_monomial_box(const MultiIndex& alpha, const Box& box) {
  Rational r = 1;
  for (int i = 0; i < 3; ++i) {
    const auto u = static_cast<std::size_t>(i);
    r *= (power(box.hi[u], alpha[i] + 1) - power(box.lo[u], alpha[i] + 1)) / (alpha[i] + 1);
  }
  return r;
}

Rational integrate_monomial_simplex(const MultiIndex& alpha) {
  Rational r(factorial(static_cast<unsigned>(alpha[0])) * factorial(static_cast<unsigned>(alpha[1])) *
                 factorial(static_cast<unsigned>(alpha[2])),
             factorial(static_cast<unsigned>(alpha.total() + 3)));
  r.canonicalize();
  return r;
}

Rational integrate_box(const Polynomial& p, const Box& box) {
  Rational sum = 0;
  for (const auto& t : p.terms()) sum += t.coeff * integrate_monomial_box(t.exponents(), box);
  return sum;
}

int ref_dimension(RefShape shape) {
  switch (shape) {
    case RefShape::point: return 0;
    case RefShape::segment: return 1;
    case RefShape::square:
    case RefShape::triangle: return 2;
    case RefShape::cube:
    case RefShape::simplex: return 3;
  }
  return 0;
}

Rational integrate_reference(const Polynomial& p, RefShape shape) {
  if (shape == RefShape::point) return p.evaluate({Rational(0), Rational(0), Rational(0)});
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    const MultiIndex m = t.exponents();
    Rational v;
    switch (shape) {
      case RefShape::segment:
        if (m[1] != 0 || m[2] != 0) throw std::invalid_argument("segment integrand uses s_2/s_3");
        v = Rational(1, m[0] + 1);
        break;
      case RefShape::square:
        if (m[2] != 0) throw std::invalid_argument("square integrand uses s_3");
        v = Rational(1, (m[0] + 1) * (m[1] + 1));
        break;
      case RefShape::cube:
        v = Rational(1, (m[0] + 1) * (m[1] + 1) * (m[2] + 1));
        break;
      case RefShape::triangle: {
        if (m[2] != 0) throw std::invalid_argument("triangle integrand uses s_3");
        v = Rational(factorial(static_cast<unsigned>(m[0])) * factorial(static_cast<unsigned>(m[1])),
                     factorial(static_cast<unsigned>(m[0] + m[1] + 2)));
        v.canonicalize();
        break;
      }
      case RefShape::simplex:
        v = integrate_monomial_simplex(m);
        break;
      case RefShape::point:
        break;
    }
    sum += t.coeff * v;
  }
  return sum;
}

Rational Entity::metric_squared() const {
  switch (axes.size()) {
    case 0: return 1;
    case 1: return norm2(axes[0]);
    case 2: return norm2(cross(axes[0], axes[1]));
    case 3: {
      const Rational d = determinant3(axes[0], axes[1], axes[2]);
      return d * d;
    }
    default: throw std::logic_error("entity with more than three axes");
  }
}

Vec3 Entity::point(const std::vector<Rational>& s) const {
  Vec3 x = origin;
  for (std::size_t j = 0; j < axes.size() && j < s.size(); ++j) x = x + s[j] * axes[j];
  return x;
}

Entity make_vertex(const Vec3& x) { return {RefShape::point, x, {}}; }
Entity make_segment(const Vec3& a, const Vec3& b) { return {RefShape::segment, a, {b - a}}; }
Entity make_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
  return {RefShape::triangle, a, {b - a, c - a}};
}
Entity make_parallelogram(const Vec3& a, const Vec3& b, const Vec3& c) {
  return {RefShape::square, a, {b - a, c - a}};
}
Entity make_tetrahedron(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return {RefShape::simplex, a, {b - a, c - a, d - a}};
}
Entity make_box_cell(const Box& box) {
  const Vec3 h = box.hi - box.lo;
  return {RefShape::cube,
          box.lo,
          {h[0] * unit_vector(0), h[1] * unit_vector(1), h[2] * unit_vector(2)}};
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
    return std::nullopt;
  Rational s;
  mpz_sqrt(s.get_num_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(s.get_den_mpz_t(), r.get_den_mpz_t());
  s.canonicalize();
  return s;
}

std::optional<Rational> EntityIntegral::exact_value() const {
  auto root = rational_sqrt(metric_squared);
  if (!root) return std::nullopt;
  return parametric * *root;
}

Polynomial restrict_to_entity(const Polynomial& p, const Entity& entity) {
  AffinePullback pull(entity.origin, entity.axes);
  return pull.apply(p);
}

EntityIntegral integrate_on_entity(const Polynomial& p, const Entity& entity) {
  const Rational g = entity.metric_squared();
  if (g == 0) throw std::invalid_argument("degenerate entity");
  return {integrate_reference(restrict_to_entity(p, entity), entity.shape), g};
}

}  // namespace divdiv
