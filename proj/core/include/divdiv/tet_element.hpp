#pragma once

#include "divdiv/dof.hpp"
#include "divdiv/frames.hpp"

#include <array>

namespace divdiv {

/// How a tetrahedron sits in a mesh: global ids of its vertices, which fix edge
/// tangents (low to high id) and face parametrizations (vertices sorted by id),
/// and the direction of each face normal.
struct TetOrientation {
  std::array<long, 4> vertex_ids{0, 1, 2, 3};
  /// +1: the global normal of local face f points out of this cell; -1: into it.
  std::array<int, 4> face_sign{1, 1, 1, 1};
};

/// Tetrahedron with rational vertices, barycentric coordinates and global frames.
///
/// Local entity numbering (15 entities): vertices 0..3; edges 4..9 for the vertex
/// pairs (0,1), (0,2), (0,3), (1,2), (1,3), (2,3); faces 10..13, face f opposite
/// vertex f; cell 14.
class TetElement {
 public:
  explicit TetElement(const std::array<Vec3, 4>& vertices, const TetOrientation& orientation = {});

  static constexpr std::size_t kEntities = 15;
  static constexpr std::size_t vertex_index(int v) { return static_cast<std::size_t>(v); }
  static constexpr std::size_t edge_index(int e) { return static_cast<std::size_t>(4 + e); }
  static constexpr std::size_t face_index(int f) { return static_cast<std::size_t>(10 + f); }
  static constexpr std::size_t cell_index() { return 14; }
  /// Local vertex pair of edge e, ascending local index.
  static std::array<int, 2> edge_local_vertices(int e);

  const Vec3& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const TetOrientation& orientation() const { return orientation_; }
  /// Barycentric coordinate of vertex i as an affine polynomial.
  const Polynomial& lambda(int i) const { return lambda_[static_cast<std::size_t>(i)]; }
  /// Signed determinant of (x1 - x0, x2 - x0, x3 - x0); six times the signed volume.
  const Rational& det() const { return det_; }

  /// Edge vertices ordered from low to high global id.
  std::array<int, 2> edge_vertices(int e) const;
  /// Face vertices ordered by global id.
  std::array<int, 3> face_vertices(int f) const;
  const EdgeFrame& edge_frame(int e) const { return edge_frames_[static_cast<std::size_t>(e)]; }
  /// Frame of face f. The normal is the area vector (x_b - x_a) x (x_c - x_a) of
  /// the sorted vertices, signed by the orientation; t_plus = x_b - x_a.
  const FaceFrame& face_frame(int f) const { return face_frames_[static_cast<std::size_t>(f)]; }
  /// +1 if the global face normal points out of this cell.
  int face_sign(int f) const { return orientation_.face_sign[static_cast<std::size_t>(f)]; }

  /// Parametrizations: edges x_a + s (x_b - x_a); faces x_a + s (x_b - x_a) + t (x_c - x_a);
  /// the cell x_0 + sum s_i (x_i - x_0).
  Entity edge_entity(int e) const;
  Entity face_entity(int f) const;
  Entity cell_entity() const;
  std::vector<DofEntity> entities() const;

  /// Product of the barycentric coordinates of the face's vertices.
  Polynomial face_bubble(int f) const;
  /// lambda_0 lambda_1 lambda_2 lambda_3.
  Polynomial cell_bubble() const;
  /// The face parameters (s, t) as affine functions on R^3: lambda of the second
  /// and third sorted face vertices.
  std::array<Polynomial, 2> face_parameters(int f) const;

  /// Exact integral over the cell.
  Rational integrate(const Polynomial& p) const;

 private:
  std::array<Vec3, 4> vertices_;
  TetOrientation orientation_;
  std::array<Polynomial, 4> lambda_;
  Rational det_;
  std::array<EdgeFrame, 6> edge_frames_;
  std::array<FaceFrame, 4> face_frames_;
};

/// The unit simplex with vertices 0, e_1, e_2, e_3.
TetElement reference_tet();

}  // namespace divdiv
