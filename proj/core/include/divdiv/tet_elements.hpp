#pragma once

#include "divdiv/dof.hpp"
#include "divdiv/tet_element.hpp"

namespace divdiv {

/// Tetrahedral families of the complex V -> U -> Sigma -> Q.
enum class TetFamily { Q, Sigma, U, V };

std::string to_string(TetFamily f);
/// Sigma needs k >= 3; U and V need k >= 4; Q needs k >= 2.
int min_degree(TetFamily f);

/// Shape space for element index k: P_{k-2} (Q), P_k(S), P_{k+1}(T), P_{k+2}(R^3).
PolySpace shape_space_tet(TetFamily family, int k);

/// The element on one tetrahedron. Functionals are ordered vertex, edge, face,
/// interior; within an entity by group, then by weight. Moment weights on edges
/// and faces are monomials in the parameters of the globally oriented entity,
/// so neighbouring cells build identical functionals on shared entities.
///
/// Group tags:
///   Sigma: vertex-value, vertex-div, edge-frame, face-traction, face-div-normal,
///          interior-hessian, interior-grad-W, interior-M
///   U:     vertex-value, vertex-grad, vertex-grad-div, edge-value, edge-div,
///          edge-frame, face-grad, face-curl, face-div-tangential,
///          interior-grad-W, interior-M, interior-devgrad
///   V:     vertex-value, vertex-grad, vertex-hessian, vertex-hessian-div,
///          edge-value, edge-div, edge-normal-derivative, edge-div-normal-derivative,
///          face-value, face-div, interior
///   Q:     cell-moment
FiniteElementDef make_tet_element(TetFamily family, int k, const TetElement& K);

}  // namespace divdiv
