#pragma once

#include "divdiv/polynomial.hpp"

#include <optional>
#include <vector>

namespace divdiv {

/// Axis-aligned box [lo_0, hi_0] x [lo_1, hi_1] x [lo_2, hi_2].
struct Box {
  Vec3 lo;
  Vec3 hi;
};

/// Integral of x^a y^b z^c over the box.
Rational integrate_monomial_box(const MultiIndex& alpha, const Box& box);

/// Integral of x^a y^b z^c over the unit simplex {x, y, z >= 0, x + y + z <= 1}.
Rational integrate_monomial_simplex(const MultiIndex& alpha);

/// Integral of a polynomial over the box.
Rational integrate_box(const Polynomial& p, const Box& box);

/// Reference domains used as parameter spaces of mesh entities.
enum class RefShape { point, segment, square, triangle, cube, simplex };

int ref_dimension(RefShape shape);

/// Integral over the reference domain of a polynomial in the parameters
/// (s_1, s_2, s_3) = (x, y, z). A point evaluates at the origin.
Rational integrate_reference(const Polynomial& p, RefShape shape);

/// A vertex, edge, face or cell with affine parametrization
/// x = origin + sum_j s_j axes[j] over a reference domain.
struct Entity {
  RefShape shape = RefShape::point;
  Vec3 origin;
  std::vector<Vec3> axes;

  int dim() const { return ref_dimension(shape); }
  /// Gram determinant det(A^T A) of the axes; the squared measure factor.
  Rational metric_squared() const;
  Vec3 point(const std::vector<Rational>& s) const;
};

Entity make_vertex(const Vec3& x);
Entity make_segment(const Vec3& a, const Vec3& b);
Entity make_triangle(const Vec3& a, const Vec3& b, const Vec3& c);
/// Parallelogram a + s (b - a) + t (c - a), s, t in [0, 1].
Entity make_parallelogram(const Vec3& a, const Vec3& b, const Vec3& c);
Entity make_tetrahedron(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
Entity make_box_cell(const Box& box);

/// Result of integrating over an entity: the exact value is
/// parametric * sqrt(metric_squared).
struct EntityIntegral {
  Rational parametric;
  Rational metric_squared;

  /// The exact value when sqrt(metric_squared) is rational.
  std::optional<Rational> exact_value() const;
};

/// Throws std::invalid_argument when the entity is degenerate.
EntityIntegral integrate_on_entity(const Polynomial& p, const Entity& entity);

/// Restriction of p to the entity as a polynomial in its parameters.
Polynomial restrict_to_entity(const Polynomial& p, const Entity& entity);

/// Square root of a nonnegative rational if it is a rational square.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace divdiv
