#pragma once

#include "divdiv/dof.hpp"

#include <array>

namespace divdiv {

/// Axis-aligned cuboid (x_a, x_b) x (y_a, y_b) x (z_a, z_b) with its entities.
///
/// Local entity numbering (27 entities):
///   vertices 0..7:   bit i of the index selects hi along axis i;
///   edges 8..19:     8 + 4 a + b_p + 2 b_q for an edge parallel to axis a, where
///                    p < q are the other axes and b_p, b_q select lo/hi;
///   faces 20..25:    20 + 2 a + side for the face perpendicular to axis a;
///   cell 26.
/// Edges run from lo to hi along their axis. A face is parametrized by (s, t)
/// along its two tangential axes in increasing axis order, from its lowest corner.
class CuboidElement {
 public:
  explicit CuboidElement(const Box& box);

  const Box& box() const { return box_; }
  Rational h(int axis) const;
  /// b_{K,i} = (x_i - lo_i)(x_i - hi_i) / h_i^2; vanishes exactly on the two faces normal to axis i.
  const Polynomial& bubble(int axis) const { return bubbles_[static_cast<std::size_t>(axis)]; }
  /// b_K = b_{K,0} b_{K,1} b_{K,2}.
  Polynomial cell_bubble() const;

  static constexpr std::size_t kVertices = 8;
  static constexpr std::size_t kEdges = 12;
  static constexpr std::size_t kFaces = 6;
  static constexpr std::size_t kEntities = 27;
  static std::size_t vertex_index(int bits) { return static_cast<std::size_t>(bits); }
  static std::size_t edge_index(int axis, int bp, int bq) { return static_cast<std::size_t>(8 + 4 * axis + bp + 2 * bq); }
  static std::size_t face_index(int axis, int side) { return static_cast<std::size_t>(20 + 2 * axis + side); }
  static constexpr std::size_t cell_index() { return 26; }
  /// Axis parallel to edge e (local edge number 0..11).
  static int edge_axis(std::size_t e) { return static_cast<int>(e / 4); }

  Vec3 vertex(int bits) const;
  std::vector<DofEntity> entities() const;

 private:
  Box box_;
  std::array<Polynomial, 3> bubbles_;
};

enum class BoxFamily { Qscalar, M, Vderham, V, U, Sigma };

std::string to_string(BoxFamily f);
/// Smallest admissible degree of the family.
int min_degree(BoxFamily f);

/// Shape spaces on a cuboid:
///   Qscalar: Q_k;
///   M:       P_{k-1,k,k} x P_{k,k-1,k} x P_{k,k,k-1};
///   Vderham, V: P_{k,k-1,k-1} x P_{k-1,k,k-1} x P_{k-1,k-1,k};
///   U:       traceless, diagonal in Q_{k-1}, u_ij of degree k in x_i, k-2 in x_j, k-1 in x_l;
///   Sigma:   symmetric, sigma_ii of degree k in x_i and k-2 in the others,
///            sigma_ij of degree k-1 in x_i and x_j and k-2 in x_l.
/// These spaces do not depend on the cell, so the element argument only serves validation.
PolySpace shape_space_box(BoxFamily family, int k);

/// Spaces of the de Rham complex P_{k1+1,k2+1,k3+1} -> M -> V -> P_{k1,k2,k3}, in order.
std::array<PolySpace, 4> derham_spaces(int k1, int k2, int k3);

/// Bubble spaces of Sigma, U and V in closed form.
PolySpace bubble_space_box(BoxFamily family, int k, const CuboidElement& cell);

/// Element definition with the DOFs of the family; Qscalar uses cell moments against Q_k.
FiniteElementDef make_box_element(BoxFamily family, int k, const CuboidElement& cell);

}  // namespace divdiv
