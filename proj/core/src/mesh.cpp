#include "divdiv/mesh.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace divdiv {

namespace {

using IdList = std::vector<std::size_t>;

/// Local edges and faces of a cell as local vertex lists, in local entity order.
std::vector<std::array<int, 2>> local_edges(CellType t) {
  std::vector<std::array<int, 2>> out;
  if (t == CellType::tet) {
    for (int e = 0; e < 6; ++e) out.push_back(TetElement::edge_local_vertices(e));
    return out;
  }
  out.resize(12);
  for (int a = 0; a < 3; ++a) {
    int p = (a + 1) % 3, q = (a + 2) % 3;
    if (p > q) std::swap(p, q);
    for (int bp = 0; bp < 2; ++bp)
      for (int bq = 0; bq < 2; ++bq) {
        const int start = (bp << p) | (bq << q);
        out[CuboidElement::edge_index(a, bp, bq) - 8] = {start, start | (1 << a)};
      }
  }
  return out;
}

std::vector<std::vector<int>> local_faces(CellType t) {
  std::vector<std::vector<int>> out;
  if (t == CellType::tet) {
    for (int f = 0; f < 4; ++f) {
      std::vector<int> v;
      for (int i = 0; i < 4; ++i)
        if (i != f) v.push_back(i);
      out.push_back(v);
    }
    return out;
  }
  for (int a = 0; a < 3; ++a)
    for (int side = 0; side < 2; ++side) {
      std::vector<int> v;
      for (int bits = 0; bits < 8; ++bits)
        if (((bits >> a) & 1) == side) v.push_back(bits);
      out.push_back(v);
    }
  return out;
}

Rational orientation(const std::vector<Vec3>& x, const IdList& c) {
  const Vec3 a = x[c[1]] - x[c[0]], b = x[c[2]] - x[c[0]], d = x[c[3]] - x[c[0]];
  return dot(a, cross(b, d));
}

void check_box_cell(const std::vector<Vec3>& x, const IdList& c) {
  const Vec3& lo = x[c[0]];
  const Vec3& hi = x[c[7]];
  for (int i = 0; i < 3; ++i)
    if (hi[i] <= lo[i]) throw std::invalid_argument("mesh: box cell with nonpositive extent");
  for (int bits = 0; bits < 8; ++bits)
    for (int i = 0; i < 3; ++i)
      if (x[c[static_cast<std::size_t>(bits)]][i] != ((bits >> i) & 1 ? hi[i] : lo[i]))
        throw std::invalid_argument("mesh: box cell corners not in corner-bit order");
}

Vec3 lerp_grid(const Box& d, const std::array<int, 3>& n, const std::array<int, 3>& idx) {
  Vec3 x;
  for (int i = 0; i < 3; ++i) x[i] = d.lo[i] + (d.hi[i] - d.lo[i]) * Rational(idx[i], n[i]);
  for (auto& c : x) c.canonicalize();
  return x;
}

}  // namespace

std::string to_string(CellType t) { return t == CellType::box ? "box" : "tet"; }

long MeshComplex::euler_characteristic() const {
  return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) + static_cast<long>(num_faces()) -
         static_cast<long>(num_cells());
}

int MeshComplex::face_sign(std::size_t cell, std::size_t local_face) const {
  const std::size_t f = cell_faces[cell][local_face];
  return face_cells[f].front() == cell ? 1 : -1;
}

Box MeshComplex::box_cell(std::size_t c) const {
  if (type != CellType::box) throw std::logic_error("box_cell on a tet mesh");
  return {vertices[cells[c][0]], vertices[cells[c][7]]};
}

TetElement MeshComplex::tet_cell(std::size_t c) const {
  if (type != CellType::tet) throw std::logic_error("tet_cell on a box mesh");
  std::array<Vec3, 4> x;
  TetOrientation o;
  for (std::size_t i = 0; i < 4; ++i) {
    x[i] = vertices[cells[c][i]];
    o.vertex_ids[i] = static_cast<long>(cells[c][i]);
    o.face_sign[i] = face_sign(c, i);
  }
  return TetElement(x, o);
}

MeshComplex mesh_from_cells(CellType type, std::vector<Vec3> vertices, std::vector<IdList> cells) {
  MeshComplex m;
  m.type = type;
  m.vertices = std::move(vertices);
  const std::size_t nv = type == CellType::box ? 8 : 4;
  for (auto& c : cells) {
    if (c.size() != nv) throw std::invalid_argument("mesh: wrong number of cell vertices");
    for (auto v : c)
      if (v >= m.vertices.size()) throw std::invalid_argument("mesh: vertex id out of range");
    if (type == CellType::tet) {
      const Rational o = orientation(m.vertices, c);
      if (o == 0) throw std::invalid_argument("mesh: degenerate tetrahedron");
      if (o < 0) std::swap(c[2], c[3]);
    } else {
      check_box_cell(m.vertices, c);
    }
  }
  m.cells = std::move(cells);

  std::map<IdList, std::size_t> edge_id, face_id;
  const auto le = local_edges(type);
  const auto lf = local_faces(type);
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const IdList& cv = m.cells[c];
    IdList ce, cf;
    for (const auto& e : le) {
      IdList key{cv[static_cast<std::size_t>(e[0])], cv[static_cast<std::size_t>(e[1])]};
      std::sort(key.begin(), key.end());
      auto [it, fresh] = edge_id.try_emplace(key, m.edges.size());
      if (fresh) m.edges.push_back({key[0], key[1]});
      ce.push_back(it->second);
    }
    for (const auto& f : lf) {
      IdList key;
      for (int v : f) key.push_back(cv[static_cast<std::size_t>(v)]);
      std::sort(key.begin(), key.end());
      auto [it, fresh] = face_id.try_emplace(key, m.faces.size());
      if (fresh) {
        m.faces.push_back(key);
        m.face_cells.emplace_back();
      }
      m.face_cells[it->second].push_back(c);
      cf.push_back(it->second);
    }
    m.cell_edges.push_back(std::move(ce));
    m.cell_faces.push_back(std::move(cf));
  }
  for (const auto& fc : m.face_cells)
    if (fc.size() > 2) throw std::invalid_argument("mesh: face shared by more than two cells");
  return m;
}

MeshComplex build_box_mesh(int nx, int ny, int nz, const Box& domain) {
  if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("build_box_mesh: subdivisions must be positive");
  const std::array<int, 3> n{nx, ny, nz};
  std::vector<Vec3> x;
  auto vid = [&](int i, int j, int k) { return static_cast<std::size_t>(i + (nx + 1) * (j + (ny + 1) * k)); };
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) x.push_back(lerp_grid(domain, n, {i, j, k}));
  std::vector<IdList> cells;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        IdList c;
        for (int bits = 0; bits < 8; ++bits) c.push_back(vid(i + (bits & 1), j + ((bits >> 1) & 1), k + ((bits >> 2) & 1)));
        cells.push_back(std::move(c));
      }
  return mesh_from_cells(CellType::box, std::move(x), std::move(cells));
}

MeshComplex build_tet_mesh(int nx, int ny, int nz, const Box& domain) {
  const MeshComplex grid = build_box_mesh(nx, ny, nz, domain);
  std::vector<IdList> cells;
  std::array<int, 3> perm{0, 1, 2};
  for (const auto& cube : grid.cells) {
    // Kuhn split: one tet per axis ordering, walking corner 0 to corner 7. The
    // split is translation invariant, so neighbouring cubes agree on shared faces.
    std::sort(perm.begin(), perm.end());
    do {
      int bits = 0;
      IdList t{cube[0]};
      for (int a : perm) {
        bits |= 1 << a;
        t.push_back(cube[static_cast<std::size_t>(bits)]);
      }
      cells.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return mesh_from_cells(CellType::tet, grid.vertices, std::move(cells));
}

MeshComplex single_tet_mesh(const std::array<Vec3, 4>& vertices) {
  return mesh_from_cells(CellType::tet, {vertices.begin(), vertices.end()}, {{0, 1, 2, 3}});
}

MeshComplex two_tet_mesh() {
  return mesh_from_cells(CellType::tet, {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{1, 1, 1}},
                         {{0, 1, 2, 3}, {4, 1, 2, 3}});
}

std::string mesh_to_json(const MeshComplex& mesh) {
  nlohmann::json j;
  j["type"] = to_string(mesh.type);
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices) j["vertices"].push_back({to_string(v[0]), to_string(v[1]), to_string(v[2])});
  j["cells"] = mesh.cells;
  return j.dump(2);
}

MeshComplex mesh_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::string type = j.at("type").get<std::string>();
  if (type != "box" && type != "tet") throw std::invalid_argument("mesh JSON: unknown type " + type);
  // Integers may be plain numbers; anything else must be an exact rational string.
  const auto coord = [](const nlohmann::json& c) -> Rational {
    if (c.is_number_integer()) return Rational(c.get<long>());
    if (c.is_string()) return parse_rational(c.get<std::string>());
    throw std::invalid_argument("mesh JSON: coordinates must be integers or rational strings");
  };
  std::vector<Vec3> x;
  for (const auto& v : j.at("vertices")) {
    if (v.size() != 3) throw std::invalid_argument("mesh JSON: vertex needs three coordinates");
    x.push_back({coord(v[0]), coord(v[1]), coord(v[2])});
  }
  return mesh_from_cells(type == "box" ? CellType::box : CellType::tet, std::move(x),
                         j.at("cells").get<std::vector<IdList>>());
}

}  // namespace divdiv
