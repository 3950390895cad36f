#pragma once

#include "divdiv/operators.hpp"

#include <array>

namespace divdiv {

using TetVertices = std::array<Vec3, 4>;

/// Integral of p over the tetrahedron with the given vertices.
Rational integrate_tet(const Polynomial& p, const TetVertices& k);

/// Terms of the two integration-by-parts identities for (div div sigma, q)_K.
///
/// Normal-divergence form:
///   (div div sigma, q) = (sigma, hess q) - sum_f (sigma n, grad q)_f + sum_f (n . div sigma, q)_f
/// Edge form:
///   (div div sigma, q) = (sigma, hess q) - sum_f sum_{e in f} (n_fe^T sigma n, q)_e
///                        - sum_f (n^T sigma n, dq/dn)_f + sum_f (2 div_f(sigma n) + d(n^T sigma n)/dn, q)_f
/// with outward unit normals n and in-plane outward edge normals n_fe.
struct GreenTerms {
  Rational lhs;
  Rational volume;
  Rational faces_normal_div;
  Rational faces_edge_form;
  Rational edges_edge_form;

  Rational residual_normal_div() const { return lhs - (volume + faces_normal_div); }
  Rational residual_edge_form() const { return lhs - (volume + faces_edge_form + edges_edge_form); }
};

/// Evaluates every term exactly; throws std::invalid_argument for a degenerate K.
GreenTerms green_terms(const TensorField& sigma, const TensorField& q, const TetVertices& k);

/// The two residuals (normal-divergence form, edge form); both vanish identically.
std::array<Rational, 2> verify_green_identities(const TensorField& sigma, const TensorField& q, const TetVertices& k);

}  // namespace divdiv
