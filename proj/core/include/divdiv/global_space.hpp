#pragma once

#include "divdiv/mesh.hpp"
#include "divdiv/tet_elements.hpp"

#include <stdexcept>

namespace divdiv {

/// Slot of the discrete complex V -> U -> Sigma -> Q.
enum class SpaceFamily { V, U, Sigma, Q };

std::string to_string(SpaceFamily f);

/// The local element of a family on one cell of the mesh, for complex index k.
/// Box meshes use V, U, Sigma at degree k and Q_{k-2}; tet meshes use the
/// tetrahedral families at index k.
FiniteElementDef local_element(const MeshComplex& mesh, std::size_t cell, SpaceFamily family, int k);

/// Conforming global space: DOFs on shared entities are identified.
struct GlobalSpace {
  MeshComplex mesh;
  SpaceFamily family = SpaceFamily::V;
  int k = 0;
  std::vector<FiniteElementDef> elements;
  /// Local DOF i of cell c has global id dof_map[c][i].
  std::vector<std::vector<std::size_t>> dof_map;
  /// DOF count per vertex, edge, face and cell (identical for every entity of a kind).
  std::array<std::size_t, 4> dofs_per_entity{};
  std::size_t dim = 0;
  /// Per cell: local DOF matrix and nodal coefficients (its inverse).
  std::vector<RatMatrix> dof_matrices;
  std::vector<RatMatrix> nodal;

  /// The global basis function dof j restricted to cell c (zero if j is not on c).
  TensorField basis_on_cell(std::size_t c, std::size_t j) const;
  /// sum_j coeffs[j] phi_j on cell c.
  TensorField field_on_cell(std::size_t c, const RatVector& coeffs) const;
};

/// Raised when a field or operator image breaks conformity; names the offending entity.
struct ConformityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument when the family is undefined at k, and
/// ConformityError when neighbouring cells disagree on a shared entity's DOF count.
GlobalSpace assemble_global_space(const MeshComplex& mesh, SpaceFamily family, int k);

/// Global DOF values of a piecewise field (one field per cell). Throws
/// ConformityError when a shared DOF takes different values from two cells, or
/// when a cell field is not reproduced by its interpolant (outside the shape space).
RatVector interpolate(const GlobalSpace& space, const std::vector<TensorField>& cell_fields);

enum class OperatorTag { dev_grad, sym_curl, div_div };
std::string to_string(OperatorTag t);
TensorField apply_operator(OperatorTag op, const TensorField& f);

struct GlobalOperatorMatrix {
  OperatorTag op = OperatorTag::dev_grad;
  /// target dim x source dim; column j holds the target DOFs of op(phi_j).
  RatMatrix matrix;
};

/// Exact matrix of op between two global spaces. Certifies, per cell, that op maps
/// the source shape space into the target shape space, and that every shared target
/// DOF of every op(phi_j) is single-valued. Failures throw ConformityError.
GlobalOperatorMatrix operator_matrix(OperatorTag op, const GlobalSpace& source, const GlobalSpace& target);

/// Coordinate-list text: a header "rows cols nnz" then "i j value" per nonzero.
std::string to_coo(const RatMatrix& m);

}  // namespace divdiv
