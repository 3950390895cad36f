#include "divdiv/tet_element.hpp"

#include <algorithm>
#include <stdexcept>

namespace divdiv {

namespace {

constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Rational det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

}  // namespace

std::array<int, 2> TetElement::edge_local_vertices(int e) { return kEdges.at(static_cast<std::size_t>(e)); }

TetElement::TetElement(const std::array<Vec3, 4>& vertices, const TetOrientation& orientation)
    : vertices_(vertices), orientation_(orientation) {
  const Vec3 a = vertices[1] - vertices[0], b = vertices[2] - vertices[0], c = vertices[3] - vertices[0];
  det_ = det3(a, b, c);
  if (det_ == 0) throw std::invalid_argument("TetElement: degenerate tetrahedron");
  for (int f = 0; f < 4; ++f)
    if (std::abs(orientation.face_sign[static_cast<std::size_t>(f)]) != 1)
      throw std::invalid_argument("TetElement: face signs must be +1 or -1");
  {
    auto ids = orientation.vertex_ids;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw std::invalid_argument("TetElement: repeated vertex id");
  }
  // Rows of J^{-1} are (b x c, c x a, a x b) / det for J = [a b c].
  const std::array<Vec3, 3> inv_rows{cross(b, c), cross(c, a), cross(a, b)};
  Polynomial sum;
  for (std::size_t j = 0; j < 3; ++j) {
    Polynomial l;
    for (int d = 0; d < 3; ++d) {
      const Rational w = inv_rows[j][d] / det_;
      l.add_scaled(Polynomial::variable(d) - Polynomial(vertices[0][d]), w);
    }
    sum += l;
    lambda_[j + 1] = std::move(l);
  }
  lambda_[0] = Polynomial(1) - sum;

  for (int e = 0; e < 6; ++e) {
    auto [p, q] = edge_vertices(e);
    edge_frames_[static_cast<std::size_t>(e)] = make_edge_frame(vertex(q) - vertex(p));
  }
  for (int f = 0; f < 4; ++f) {
    auto [va, vb, vc] = face_vertices(f);
    const Vec3 tb = vertex(vb) - vertex(va), tc = vertex(vc) - vertex(va);
    Vec3 n = cross(tb, tc);
    // Outward means pointing away from the opposite vertex.
    const bool outward = dot(n, vertex(va) - vertex(f)) > 0;
    if (outward != (face_sign(f) > 0)) n = Rational(-1) * n;
    face_frames_[static_cast<std::size_t>(f)] = make_face_frame(n, tb);
  }
}

std::array<int, 2> TetElement::edge_vertices(int e) const {
  auto [p, q] = edge_local_vertices(e);
  const auto& id = orientation_.vertex_ids;
  if (id[static_cast<std::size_t>(p)] > id[static_cast<std::size_t>(q)]) std::swap(p, q);
  return {p, q};
}

std::array<int, 3> TetElement::face_vertices(int f) const {
  std::array<int, 3> v{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != f) v[static_cast<std::size_t>(n++)] = i;
  const auto& id = orientation_.vertex_ids;
  std::sort(v.begin(), v.end(), [&](int a, int b) { return id[static_cast<std::size_t>(a)] < id[static_cast<std::size_t>(b)]; });
  return v;
}

Entity TetElement::edge_entity(int e) const {
  auto [p, q] = edge_vertices(e);
  return make_segment(vertex(p), vertex(q));
}

Entity TetElement::face_entity(int f) const {
  auto [a, b, c] = face_vertices(f);
  return make_triangle(vertex(a), vertex(b), vertex(c));
}

Entity TetElement::cell_entity() const { return make_tetrahedron(vertex(0), vertex(1), vertex(2), vertex(3)); }

std::vector<DofEntity> TetElement::entities() const {
  std::vector<DofEntity> out(kEntities);
  for (int v = 0; v < 4; ++v) out[vertex_index(v)] = {0, make_vertex(vertex(v)), false, "vertex " + std::to_string(v)};
  for (int e = 0; e < 6; ++e) out[edge_index(e)] = {1, edge_entity(e), false, "edge " + std::to_string(e)};
  for (int f = 0; f < 4; ++f) out[face_index(f)] = {2, face_entity(f), false, "face " + std::to_string(f)};
  out[cell_index()] = {3, cell_entity(), true, "cell"};
  return out;
}

Polynomial TetElement::face_bubble(int f) const {
  auto [a, b, c] = face_vertices(f);
  return lambda(a) * lambda(b) * lambda(c);
}

Polynomial TetElement::cell_bubble() const { return lambda(0) * lambda(1) * lambda(2) * lambda(3); }

std::array<Polynomial, 2> TetElement::face_parameters(int f) const {
  auto [a, b, c] = face_vertices(f);
  (void)a;
  return {lambda(b), lambda(c)};
}

Rational TetElement::integrate(const Polynomial& p) const {
  const Entity cell = cell_entity();
  AffinePullback pull(cell.origin, cell.axes);
  return abs(det_) * integrate_reference(pull.apply(p), RefShape::simplex);
}

TetElement reference_tet() {
  return TetElement({Vec3{0, 0, 0}, unit_vector(0), unit_vector(1), unit_vector(2)});
}

}  // namespace divdiv
