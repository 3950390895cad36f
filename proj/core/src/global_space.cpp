#include "divdiv/global_space.hpp"

#include "divdiv/operators.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace divdiv {

namespace {

/// Kind (0 vertex, 1 edge, 2 face, 3 cell) and global id of a cell's local entity.
std::pair<int, std::size_t> global_entity(const MeshComplex& m, std::size_t c, std::size_t local) {
  const bool box = m.type == CellType::box;
  const std::size_t nv = box ? 8 : 4, ne = box ? 12 : 6, nf = box ? 6 : 4;
  if (local < nv) return {0, m.cells[c][local]};
  local -= nv;
  if (local < ne) return {1, m.cell_edges[c][local]};
  local -= ne;
  if (local < nf) return {2, m.cell_faces[c][local]};
  return {3, c};
}

std::string describe_dof(const GlobalSpace& s, std::size_t c, std::size_t local) {
  const auto& d = s.elements[c].dofs[local];
  return "cell " + std::to_string(c) + ", " + s.elements[c].entities[d.entity].label + ", group " + d.group;
}

}  // namespace

std::string to_string(SpaceFamily f) {
  switch (f) {
    case SpaceFamily::V: return "V";
    case SpaceFamily::U: return "U";
    case SpaceFamily::Sigma: return "Sigma";
    case SpaceFamily::Q: return "Q";
  }
  return "?";
}

std::string to_string(OperatorTag t) {
  switch (t) {
    case OperatorTag::dev_grad: return "dev_grad";
    case OperatorTag::sym_curl: return "sym_curl";
    case OperatorTag::div_div: return "div_div";
  }
  return "?";
}

TensorField apply_operator(OperatorTag op, const TensorField& f) {
  switch (op) {
    case OperatorTag::dev_grad: return dev_grad(f);
    case OperatorTag::sym_curl: return sym_curl(f);
    case OperatorTag::div_div: return div_div(f);
  }
  throw std::invalid_argument("apply_operator: unknown operator");
}

FiniteElementDef local_element(const MeshComplex& mesh, std::size_t cell, SpaceFamily family, int k) {
  if (mesh.type == CellType::box) {
    const CuboidElement K(mesh.box_cell(cell));
    switch (family) {
      case SpaceFamily::V: return make_box_element(BoxFamily::V, k, K);
      case SpaceFamily::U: return make_box_element(BoxFamily::U, k, K);
      case SpaceFamily::Sigma: return make_box_element(BoxFamily::Sigma, k, K);
      case SpaceFamily::Q:
        if (k < 3) throw std::invalid_argument("local_element: box complex needs k >= 3");
        return make_box_element(BoxFamily::Qscalar, k - 2, K);
    }
  }
  const TetElement K = mesh.tet_cell(cell);
  switch (family) {
    case SpaceFamily::V: return make_tet_element(TetFamily::V, k, K);
    case SpaceFamily::U: return make_tet_element(TetFamily::U, k, K);
    case SpaceFamily::Sigma: return make_tet_element(TetFamily::Sigma, k, K);
    case SpaceFamily::Q: return make_tet_element(TetFamily::Q, k, K);
  }
  throw std::invalid_argument("local_element: unknown family");
}

GlobalSpace assemble_global_space(const MeshComplex& mesh, SpaceFamily family, int k) {
  GlobalSpace s;
  s.mesh = mesh;
  s.family = family;
  s.k = k;
  std::array<std::optional<std::size_t>, 4> per_kind;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    s.elements.push_back(local_element(mesh, c, family, k));
    const auto counts = s.elements.back().dofs_per_entity();
    for (std::size_t e = 0; e < counts.size(); ++e) {
      const int kind = global_entity(mesh, c, e).first;
      auto& slot = per_kind[static_cast<std::size_t>(kind)];
      if (!slot) slot = counts[e];
      if (*slot != counts[e])
        throw ConformityError("assemble_global_space: entity DOF counts differ (" + s.elements.back().entities[e].label +
                              " of cell " + std::to_string(c) + ")");
    }
  }
  for (std::size_t i = 0; i < 4; ++i) s.dofs_per_entity[i] = per_kind[i].value_or(0);
  const std::array<std::size_t, 4> entity_count{mesh.num_vertices(), mesh.num_edges(), mesh.num_faces(),
                                                mesh.num_cells()};
  std::array<std::size_t, 4> offset{};
  std::size_t total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    offset[i] = total;
    total += entity_count[i] * s.dofs_per_entity[i];
  }
  s.dim = total;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& def = s.elements[c];
    std::vector<std::size_t> seen(def.entities.size(), 0);
    std::vector<std::size_t> map;
    for (const auto& d : def.dofs) {
      const auto [kind, id] = global_entity(mesh, c, d.entity);
      const auto kk = static_cast<std::size_t>(kind);
      map.push_back(offset[kk] + id * s.dofs_per_entity[kk] + seen[d.entity]++);
    }
    s.dof_map.push_back(std::move(map));
    s.dof_matrices.push_back(dof_matrix(def));
    s.nodal.push_back(nodal_coefficients(s.dof_matrices.back()));
  }
  return s;
}

TensorField GlobalSpace::basis_on_cell(std::size_t c, std::size_t j) const {
  const auto& map = dof_map[c];
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] == j) return elements[c].shape.combine(nodal[c].column(i));
  return TensorField::zero(elements[c].shape.shape());
}

TensorField GlobalSpace::field_on_cell(std::size_t c, const RatVector& coeffs) const {
  RatVector local(dof_map[c].size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = coeffs.at(dof_map[c][i]);
  return elements[c].shape.combine(nodal[c].apply(local));
}

RatVector interpolate(const GlobalSpace& space, const std::vector<TensorField>& cell_fields) {
  if (cell_fields.size() != space.elements.size()) throw std::invalid_argument("interpolate: one field per cell required");
  RatVector out(space.dim);
  std::vector<bool> set(space.dim, false);
  for (std::size_t c = 0; c < cell_fields.size(); ++c) {
    DofEvaluator ev(space.elements[c]);
    const RatVector local = ev.evaluate(cell_fields[c]);
    for (std::size_t i = 0; i < local.size(); ++i) {
      const std::size_t g = space.dof_map[c][i];
      if (!set[g]) {
        out[g] = local[i];
        set[g] = true;
      } else if (out[g] != local[i]) {
        throw ConformityError("interpolate: DOF is not single-valued (" + describe_dof(space, c, i) + ")");
      }
    }
    const TensorField back = space.elements[c].shape.combine(space.nodal[c].apply(local));
    if (!(back - cell_fields[c]).is_zero())
      throw ConformityError("interpolate: field on cell " + std::to_string(c) + " is outside the shape space");
  }
  return out;
}

GlobalOperatorMatrix operator_matrix(OperatorTag op, const GlobalSpace& source, const GlobalSpace& target) {
  if (source.elements.size() != target.elements.size())
    throw std::invalid_argument("operator_matrix: spaces live on different meshes");
  GlobalOperatorMatrix out{op, RatMatrix(target.dim, source.dim)};
  // Nonzeros of each target row as seen from the first cell that carries it.
  std::vector<std::optional<std::map<std::size_t, Rational>>> first(target.dim);
  for (std::size_t c = 0; c < source.elements.size(); ++c) {
    const auto& src = source.elements[c];
    const auto& tgt = target.elements[c];
    std::vector<TensorField> images;
    for (const auto& f : src.shape.basis()) images.push_back(apply_operator(op, f));
    const SpanTester tester(tgt.shape.basis());
    for (std::size_t s = 0; s < images.size(); ++s)
      if (!tester.contains(images[s]))
        throw ConformityError("operator_matrix: " + to_string(op) + " of shape function " + std::to_string(s) +
                              " on cell " + std::to_string(c) + " leaves the target shape space");
    DofEvaluator ev(tgt);
    const RatMatrix local = ev.matrix(images) * source.nodal[c];
    for (std::size_t i = 0; i < local.rows(); ++i) {
      const std::size_t gi = target.dof_map[c][i];
      std::map<std::size_t, Rational> row;
      for (std::size_t j = 0; j < local.cols(); ++j)
        if (sgn(local(i, j)) != 0) row.emplace(source.dof_map[c][j], local(i, j));
      if (!first[gi]) {
        for (const auto& [gj, v] : row) out.matrix(gi, gj) = v;
        first[gi] = std::move(row);
        continue;
      }
      // Both maps hold nonzeros only, so a source function missing from one cell
      // must also vanish in the other.
      if (row != *first[gi])
        throw ConformityError("operator_matrix: " + to_string(op) + " image has a multivalued target DOF (" +
                              describe_dof(target, c, i) + ")");
    }
  }
  return out;
}

std::string to_coo(const RatMatrix& m) {
  std::ostringstream os;
  os << m.rows() << " " << m.cols() << " " << m.nonzeros() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) os << i << " " << j << " " << to_string(m(i, j)) << "\n";
  return os.str();
}

}  // namespace divdiv
