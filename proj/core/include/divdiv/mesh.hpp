#pragma once

#include "divdiv/box_elements.hpp"
#include "divdiv/tet_element.hpp"

#include <array>
#include <string>
#include <vector>

namespace divdiv {

enum class CellType { box, tet };

std::string to_string(CellType t);

/// Conforming cuboid or tetrahedral mesh with its full entity incidence.
///
/// Box cells list their 8 corners so that local corner b has bit i set when it
/// sits at the upper end of axis i; tet cells list 4 vertices with positive
/// orientation. Edges and faces are stored as ascending vertex-id lists, and
/// each cell's local edges and faces follow the local numbering of
/// CuboidElement / TetElement.
struct MeshComplex {
  CellType type = CellType::box;
  std::vector<Vec3> vertices;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::vector<std::size_t>> faces;
  std::vector<std::vector<std::size_t>> cell_edges;
  std::vector<std::vector<std::size_t>> cell_faces;
  /// Incident cells of each face, ascending. One entry on the boundary.
  std::vector<std::vector<std::size_t>> face_cells;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_edges() const { return edges.size(); }
  std::size_t num_faces() const { return faces.size(); }
  std::size_t num_cells() const { return cells.size(); }
  /// #V - #E + #F - #T; equals 1 on a contractible mesh.
  long euler_characteristic() const;
  bool is_boundary_face(std::size_t f) const { return face_cells[f].size() == 1; }

  /// Global face normals point from the lower to the higher cell id, and out of
  /// the domain on the boundary. face_sign is +1 when the global normal of the
  /// cell's local face points out of the cell.
  int face_sign(std::size_t cell, std::size_t local_face) const;
  Box box_cell(std::size_t c) const;
  TetElement tet_cell(std::size_t c) const;
};

/// Uniform nx x ny x nz grid of the domain box.
MeshComplex build_box_mesh(int nx, int ny, int nz, const Box& domain = {{0, 0, 0}, {1, 1, 1}});
/// The same grid with each cube split into six tetrahedra around its main diagonal.
MeshComplex build_tet_mesh(int nx, int ny, int nz, const Box& domain = {{0, 0, 0}, {1, 1, 1}});
/// One tetrahedron; defaults to the unit simplex.
MeshComplex single_tet_mesh(const std::array<Vec3, 4>& vertices = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0},
                                                                     Vec3{0, 0, 1}});
/// The unit simplex and its reflection through the face x + y + z = 1.
MeshComplex two_tet_mesh();

/// Builds incidence from vertices and cells. Tet cells are reordered to positive
/// orientation; box cells must be axis-aligned in corner-bit order. Throws on
/// degenerate cells, faces shared by more than two cells, or a non-conforming box layout.
MeshComplex mesh_from_cells(CellType type, std::vector<Vec3> vertices, std::vector<std::vector<std::size_t>> cells);

/// {"type": "box" | "tet", "vertices": [["p/q", ...], ...], "cells": [[ids], ...]}
std::string mesh_to_json(const MeshComplex& mesh);
MeshComplex mesh_from_json(const std::string& text);

}  // namespace divdiv
