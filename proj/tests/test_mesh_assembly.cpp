#include "divdiv/global_space.hpp"
#include "divdiv/linalg.hpp"
#include "divdiv/mesh.hpp"
#include "divdiv/random.hpp"
#include "divdiv/verify.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace divdiv;
using namespace divdiv::test;

namespace {

struct Counts {
  std::size_t v, e, f, c;
};

Counts counts(const MeshComplex& m) { return {m.num_vertices(), m.num_edges(), m.num_faces(), m.num_cells()}; }

/// Same complex with vertex ids permuted and cells listed in reverse order.
MeshComplex permuted(const MeshComplex& m, std::uint64_t seed) {
  std::vector<std::size_t> perm(m.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 gen(seed);
  std::shuffle(perm.begin(), perm.end(), gen);
  std::vector<Vec3> x(m.num_vertices());
  for (std::size_t i = 0; i < perm.size(); ++i) x[perm[i]] = m.vertices[i];
  std::vector<std::vector<std::size_t>> cells;
  for (auto it = m.cells.rbegin(); it != m.cells.rend(); ++it) {
    std::vector<std::size_t> c;
    for (std::size_t v : *it) c.push_back(perm[v]);
    cells.push_back(c);
  }
  return mesh_from_cells(m.type, std::move(x), std::move(cells));
}

long tet_formula(SpaceFamily f, long k, const Counts& n) {
  const long V = static_cast<long>(n.v), E = static_cast<long>(n.e), F = static_cast<long>(n.f),
             T = static_cast<long>(n.c);
  switch (f) {
    case SpaceFamily::V: return 36 * V + (11 * k - 29) * E + (2 * k * k - 11 * k + 15) * F + (k * k * k - 4 * k * k + 3 * k) / 2 * T;
    case SpaceFamily::U:
      return 41 * V + (16 * k - 30) * E + (4 * k * k - 15 * k + 11) * F + (4 * k * k * k - 12 * k * k - 4 * k + 12) / 3 * T;
    case SpaceFamily::Sigma: return 9 * V + (5 * k - 5) * E + (2 * k * k - 4 * k) * F + (k * k * k - 2 * k * k - 3 * k) * T;
    case SpaceFamily::Q: return (k * k * k - k) / 6 * T;
  }
  return -1;
}

void same_verdict(const VerificationReport& a, const VerificationReport& b) {
  CHECK(a.pass);
  CHECK(b.pass);
  CHECK(a.dims == b.dims);
  CHECK(a.ranks == b.ranks);
}

}  // namespace

TEST_SUITE("mesh_assembly") {

TEST_CASE("box mesh entity counts") {
  const auto check = [](int nx, int ny, int nz, Counts want) {
    const MeshComplex m = build_box_mesh(nx, ny, nz);
    const Counts got = counts(m);
    CHECK(got.v == want.v);
    CHECK(got.e == want.e);
    CHECK(got.f == want.f);
    CHECK(got.c == want.c);
    CHECK(m.euler_characteristic() == 1);
  };
  check(1, 1, 1, {8, 12, 6, 1});
  check(2, 1, 1, {12, 20, 11, 2});
  check(2, 2, 2, {27, 54, 36, 8});
  check(3, 2, 1, {24, 46, 29, 6});
  CHECK_THROWS_AS(build_box_mesh(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_tet_mesh(1, -1, 1), std::invalid_argument);
}

TEST_CASE("tetrahedral mesh entity counts") {
  const auto check = [](const MeshComplex& m, Counts want) {
    const Counts got = counts(m);
    CHECK(got.v == want.v);
    CHECK(got.e == want.e);
    CHECK(got.f == want.f);
    CHECK(got.c == want.c);
    CHECK(m.euler_characteristic() == 1);
  };
  check(build_tet_mesh(1, 1, 1), {8, 19, 18, 6});
  check(single_tet_mesh(), {4, 6, 4, 1});
  check(two_tet_mesh(), {5, 9, 7, 2});
  check(build_tet_mesh(2, 1, 1), {12, 33, 34, 12});
}

TEST_CASE("incidence and global face orientation") {
  for (const MeshComplex& m : {build_box_mesh(2, 2, 1), build_tet_mesh(1, 1, 1)}) {
    std::size_t interior = 0;
    for (std::size_t f = 0; f < m.num_faces(); ++f) {
      const auto& cells = m.face_cells[f];
      REQUIRE((cells.size() == 1 || cells.size() == 2));
      if (cells.size() == 2) {
        ++interior;
        CHECK(cells[0] < cells[1]);
      }
    }
    CHECK(interior > 0);
    // A shared face leaves exactly one of its two cells.
    for (std::size_t c = 0; c < m.num_cells(); ++c)
      for (std::size_t lf = 0; lf < m.cell_faces[c].size(); ++lf) {
        const std::size_t f = m.cell_faces[c][lf];
        const int s = m.face_sign(c, lf);
        if (m.is_boundary_face(f)) {
          CHECK(s == 1);
        } else {
          CHECK(s == (m.face_cells[f][0] == c ? 1 : -1));
        }
      }
  }
}

TEST_CASE("mesh JSON round trip") {
  for (const MeshComplex& m : {build_box_mesh(2, 1, 1, Box{{0, 0, 0}, {q(3, 2), 1, q(1, 3)}}), two_tet_mesh()}) {
    const std::string text = mesh_to_json(m);
    const MeshComplex back = mesh_from_json(text);
    CHECK(back.type == m.type);
    CHECK(back.vertices == m.vertices);
    CHECK(back.cells == m.cells);
    CHECK(back.edges == m.edges);
    CHECK(back.faces == m.faces);
    CHECK(mesh_to_json(back) == text);
  }
  CHECK(mesh_from_json(R"({"type":"tet","vertices":[["0","0","0"],["1/2","0","0"],["0","1","0"],["0","0","3/4"]],
                          "cells":[[0,1,2,3]]})")
            .vertices[1][0] == q(1, 2));
  // Integer coordinates may be plain numbers; floats are rejected as inexact.
  CHECK(mesh_from_json(R"({"type":"tet","vertices":[[0,0,0],[2,0,0],[0,1,0],["0","0","1/3"]],"cells":[[0,1,2,3]]})")
            .vertices[1][0] == 2);
  CHECK_THROWS_AS(mesh_from_json(R"({"type":"tet","vertices":[[0,0,0],[0.5,0,0],[0,1,0],[0,0,1]],"cells":[[0,1,2,3]]})"),
                  std::invalid_argument);
  CHECK_THROWS(mesh_from_json(R"({"type":"hex","vertices":[],"cells":[]})"));
  CHECK_THROWS(mesh_from_json(R"({"type":"tet","vertices":[["0","0","0"]],"cells":[[0,1,2,3]]})"));
  CHECK_THROWS(mesh_from_json(R"({"type":"tet","vertices":[["0","0","0"],["1","0","0"],["0","1","0"],["1","1","0"]],
                                  "cells":[[0,1,2,3]]})"));
}

TEST_CASE("global dimensions on tetrahedral meshes") {
  for (const MeshComplex& m : {single_tet_mesh(), two_tet_mesh()})
    for (auto f : {SpaceFamily::V, SpaceFamily::U, SpaceFamily::Sigma, SpaceFamily::Q}) {
      const GlobalSpace s = assemble_global_space(m, f, 4);
      CHECK(static_cast<long>(s.dim) == tet_formula(f, 4, counts(m)));
    }
  const GlobalSpace v = assemble_global_space(single_tet_mesh(), SpaceFamily::V, 4);
  CHECK(v.dim == 252);
  CHECK(v.dim == 36 * 4 + 15 * 6 + 3 * 4 + 6);
  const GlobalSpace sigma = assemble_global_space(build_tet_mesh(1, 1, 1), SpaceFamily::Sigma, 4);
  CHECK(static_cast<long>(sigma.dim) == tet_formula(SpaceFamily::Sigma, 4, counts(build_tet_mesh(1, 1, 1))));
  CHECK(sigma.dim == 765);
}

TEST_CASE("global DOF numbering is single-valued") {
  const MeshComplex m = build_box_mesh(2, 1, 1);
  const GlobalSpace s = assemble_global_space(m, SpaceFamily::Sigma, 3);
  CHECK(s.dim == 184);
  std::vector<int> hits(s.dim, 0);
  for (const auto& cell : s.dof_map)
    for (std::size_t g : cell) ++hits[g];
  // Every id is used; ids on the shared face and its edges are used by both cells.
  CHECK(std::count(hits.begin(), hits.end(), 0) == 0);
  CHECK(std::count(hits.begin(), hits.end(), 2) == static_cast<long>(4 * 2 + 12));
  CHECK_THROWS_AS(assemble_global_space(m, SpaceFamily::Q, 2), std::invalid_argument);
}

TEST_CASE("interpolation of global fields") {
  const MeshComplex m = build_box_mesh(2, 1, 1, Box{{0, 0, 0}, {2, q(1, 2), 1}});
  const GlobalSpace v = assemble_global_space(m, SpaceFamily::V, 3);
  const GlobalSpace u = assemble_global_space(m, SpaceFamily::U, 3);

  const TensorField rt = vec(2 * X() + 1, 2 * Y() - 3, 2 * Z() + q(1, 2));
  const RatVector c = interpolate(v, {rt, rt});
  for (std::size_t cell = 0; cell < 2; ++cell) CHECK(v.field_on_cell(cell, c) == rt);

  RationalRng rng(40);
  const PolySpace vs = shape_space_box(BoxFamily::V, 3);
  RatVector coeff(vs.dim());
  for (auto& e : coeff) e = rng.next();
  const TensorField w = vs.combine(coeff);
  const RatVector cw = interpolate(v, {w, w});
  CHECK(v.field_on_cell(1, cw) == w);
  const TensorField g = dev_grad(w);
  const RatVector cu = interpolate(u, {g, g});
  CHECK(u.field_on_cell(0, cu) == g);

  // The operator matrix maps interpolants to interpolants.
  const GlobalOperatorMatrix d = operator_matrix(OperatorTag::dev_grad, v, u);
  CHECK(d.matrix.apply(cw) == cu);

  CHECK_THROWS_AS(interpolate(v, {vec(X().pow(9), 0, 0), vec(X().pow(9), 0, 0)}), ConformityError);
  const TensorField zero = vec(0, 0, 0), one = vec(1, 0, 0);
  CHECK_THROWS_AS(interpolate(v, {zero, one}), ConformityError);
  CHECK_THROWS_AS(interpolate(v, {zero}), std::invalid_argument);
}

TEST_CASE("operator matrices on one cube") {
  const MeshComplex m = build_box_mesh(1, 1, 1);
  const GlobalSpace v = assemble_global_space(m, SpaceFamily::V, 3);
  const GlobalSpace u = assemble_global_space(m, SpaceFamily::U, 3);
  const GlobalSpace s = assemble_global_space(m, SpaceFamily::Sigma, 3);
  const GlobalSpace qh = assemble_global_space(m, SpaceFamily::Q, 3);
  const RatMatrix a = operator_matrix(OperatorTag::dev_grad, v, u).matrix;
  const RatMatrix b = operator_matrix(OperatorTag::sym_curl, u, s).matrix;
  const RatMatrix c = operator_matrix(OperatorTag::div_div, s, qh).matrix;
  CHECK(a.rows() == 198);
  CHECK(a.cols() == 108);
  CHECK(b.rows() == 102);
  CHECK(b.cols() == 198);
  CHECK(c.rows() == 8);
  CHECK(c.cols() == 102);
  CHECK((b * a).is_zero());
  CHECK((c * b).is_zero());
  CHECK(exact_rank(a).rank == 104);
  CHECK(exact_rank(b).rank == 94);
  CHECK(exact_rank(c).rank == 8);

  // dev grad of V_4 does not fit into U_3.
  const GlobalSpace v4 = assemble_global_space(m, SpaceFamily::V, 4);
  CHECK_THROWS_AS(operator_matrix(OperatorTag::dev_grad, v4, u), ConformityError);
  CHECK_THROWS_AS(operator_matrix(OperatorTag::dev_grad, v, assemble_global_space(build_box_mesh(2, 1, 1),
                                                                                    SpaceFamily::U, 3)),
                  std::invalid_argument);
}

TEST_CASE("coordinate list export") {
  RatMatrix m(2, 3);
  m(0, 0) = q(1, 2);
  m(1, 2) = -3;
  CHECK(to_coo(m) == "2 3 2\n0 0 1/2\n1 2 -3\n");
  CHECK(to_coo(RatMatrix(1, 1)) == "1 1 0\n");
}

TEST_CASE("permuting the mesh preserves every rank") {
  const MeshComplex box = build_box_mesh(2, 1, 1);
  same_verdict(check_exactness_global(box, 3, "box"), check_exactness_global(permuted(box, 1), 3, "box"));
  const MeshComplex tets = two_tet_mesh();
  same_verdict(check_exactness_global(tets, 4, "two"), check_exactness_global(permuted(tets, 2), 4, "two"));
}

TEST_CASE("scaling the geometry preserves every rank") {
  same_verdict(check_exactness_global(build_box_mesh(2, 1, 1), 3, "box"),
               check_exactness_global(build_box_mesh(2, 1, 1, Box{{q(-1, 2), 0, 1}, {q(5, 2), q(1, 3), 3}}), 3, "box"));
}

}  // TEST_SUITE
