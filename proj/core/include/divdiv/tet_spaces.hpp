#pragma once

#include "divdiv/poly_space.hpp"
#include "divdiv/tet_element.hpp"

#include <functional>

namespace divdiv {

/// Subspace of a parent space cut out by linear conditions. Each condition is a
/// polynomial (typically a trace in face parameters) that must vanish identically,
/// so every coefficient is one scalar constraint.
struct ConstrainedSpace {
  PolySpace parent;
  std::size_t constraint_count = 0;  ///< scalar constraints (coefficient rows)
  std::size_t constraint_rank = 0;
  /// Nullspace basis; space.dim() == parent.dim() - constraint_rank.
  PolySpace space;
  /// Coordinates of space[j] in the parent basis.
  std::vector<RatVector> coordinates;
};

/// P_m(R^3), components in order, graded-lex monomials.
PolySpace vector_polys(int m);
/// P_m(S): slots 00, 11, 22, 01, 02, 12, each over the monomials.
PolySpace symmetric_polys(int m);
/// P_m(T): diag(p, 0, -p), diag(0, p, -p), then the six off-diagonal slots row-major.
PolySpace traceless_polys(int m);

using TraceMap = std::function<std::vector<Polynomial>(const TensorField&)>;

ConstrainedSpace constrain(PolySpace parent, const TraceMap& traces, std::string descriptor);

/// P_m(K; R^3) fields with phi x n_f = 0 on every face.
ConstrainedSpace space_W(int m, const TetElement& K);
/// P_m(K; S) fields with Lambda_f(tau) = Q_f tau Q_f = 0 on every face.
ConstrainedSpace space_M(int m, const TetElement& K);
/// curl W_k modulo rigid motions, realized as the L^2(K)-orthogonal complement
/// of RM inside curl W_k. Test space of degree k - 1.
PolySpace space_W_quotient(int k, const TetElement& K);
/// curl curl_col M_{k+2}; symmetric, divergence free, degree k.
PolySpace space_M_image(int k, const TetElement& K);
/// Fields b_K p with p in P_{k-2}(K; R^3) whose divergence vanishes on every face.
ConstrainedSpace space_Pdiv_bubble(int k, const TetElement& K);
/// Polynomials of degree d on a triangle vanishing at its three vertices, in the
/// face parameters (s, t): barycentric monomials of degree d other than pure powers.
PolySpace space_Ptilde_face(int d);

/// The six rigid motions (a + b x x): three translations, then rotations about z, y, x.
std::vector<TensorField> rigid_motions();
/// q - Pi q for the monomials q of total degree 2..n, where Pi is the L^2(K)
/// projection onto P_1. Hessians equal those of the monomials.
PolySpace space_P_mod_P1(int n, const TetElement& K);
/// Face weights spanning P_d in the parameters: the constant 1 followed by
/// s^a t^b (1 <= a + b <= d) minus their mean over the reference triangle.
std::vector<Polynomial> face_weights_mean_split(int d);

}  // namespace divdiv
