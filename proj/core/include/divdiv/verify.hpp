#pragma once

#include "divdiv/global_space.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace divdiv {

/// Outcome of one verification procedure. A failing report always carries an
/// exact witness: an expected/actual pair or a description of a nonzero residual.
struct VerificationReport {
  std::string claim;
  bool pass = true;
  std::map<std::string, long long> dims;
  std::map<std::string, long long> ranks;
  std::vector<std::string> witnesses;
  long long millis = 0;

  /// Records "what: actual (expected e)"; a mismatch fails the report.
  void expect_eq(const std::string& what, long long actual, long long expected);
  /// Records the witness and fails the report unless ok.
  void expect(bool ok, const std::string& witness);
  std::string status() const { return pass ? "pass" : "fail"; }
  std::string to_json(int indent = 2) const;
};

/// JSON array of reports, sorted by claim id so the output is independent of run order.
std::string reports_to_json(std::vector<VerificationReport> reports, int indent = 2);

// --- Polynomial complexes on a box ---------------------------------------------

/// Scalar de Rham complex Q_{k-1} -> M -> V -> Q_{k-2} with grad, curl, div.
VerificationReport check_polynomial_derham(int k);
/// The anisotropic complex P_{k1+1,k2+1,k3+1} -> ... -> P_{k1,k2,k3}.
VerificationReport check_polynomial_derham(int k1, int k2, int k3);
/// V_[k] -> U_[k] -> Sigma_[k] -> Q_{k-2} with dev grad, sym curl, div div; kernel RT.
VerificationReport check_polynomial_divdiv(int k);

// --- Local elements ------------------------------------------------------------

/// Basis lengths of the box families (grid "box") or the tetrahedral families on
/// the reference tetrahedron (grid "tet") against their closed-form dimensions.
VerificationReport check_dimensions(const std::string& grid, int k);
/// Dimensions of the constrained tetrahedral spaces used by the interior DOFs.
VerificationReport check_constrained_spaces(int k);

/// One cell for element-level checks. Box cells give the two corners, tet cells four vertices.
struct CellGeometry {
  std::string grid = "box";
  std::vector<Vec3> vertices;

  static CellGeometry unit_box();
  static CellGeometry reference_tet();
  MeshComplex as_mesh() const;
};

SpaceFamily parse_family(const std::string& name);

/// Exact nonsingularity of the DOF matrix of one family on one cell.
VerificationReport check_unisolvence(SpaceFamily family, int k, const CellGeometry& cell);

// --- Global complexes ----------------------------------------------------------

/// Rank identities of the assembled complex V_h -> U_h -> Sigma_h -> Q_h, the
/// alternating dimension sum, vanishing compositions and the closed-form counts.
VerificationReport check_exactness_global(const MeshComplex& mesh, int k, const std::string& mesh_name);

/// Draws elements of ker(sym curl) and recovers dev grad preimages with the RT
/// gauge fixed by the value at one vertex and the mean divergence.
VerificationReport check_kernel_characterization(const MeshComplex& mesh, int k, const std::string& mesh_name,
                                                 std::uint64_t seed = 1, int samples = 3);

/// Builds u_h with div div u_h = q_h from the DOFs alone, for every Q basis
/// function and a random q_h, on a tetrahedral mesh. Compares against the rank
/// of the assembled div div matrix.
VerificationReport check_divdiv_surjectivity_constructive(const MeshComplex& mesh, int k,
                                                          const std::string& mesh_name, std::uint64_t seed = 1);

/// Result of the constructive step for a single q_h.
struct DivDivPreimage {
  RatVector v_coefficients;  ///< per cell, P_{k-1}^3 monomial coordinates, concatenated
  RatVector u_dofs;          ///< global Sigma_h DOF vector
  bool solved = false;
  std::string failure;
};

/// Constructs u_h for q_h given as one scalar polynomial per cell.
DivDivPreimage construct_divdiv_preimage(const GlobalSpace& sigma, const std::vector<Polynomial>& q);

// --- Identity suite -------------------------------------------------------------

/// Fixed-seed random fields: sym curl dev grad = 0, div div sym curl = 0, the
/// traction identities of sym curl, the dev grad column-divergence identity,
/// rot_f v = n . curl v and both Green identities on random tetrahedra.
VerificationReport check_identity_suite(int samples, std::uint64_t seed = 2024);

// --- Nodal basis export ---------------------------------------------------------

/// JSON with the cell, the family and the nodal fields as exact term lists.
std::string export_basis_json(SpaceFamily family, int k, const CellGeometry& cell);
/// Re-imports an export, rebuilds the element and checks DOF_i(field_j) = delta_ij.
VerificationReport check_basis_json(const std::string& text);

}  // namespace divdiv
