#include "divdiv/linalg.hpp"
#include "divdiv/random.hpp"
#include "divdiv/tet_element.hpp"
#include "divdiv/tet_elements.hpp"
#include "divdiv/tet_spaces.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace divdiv;
using namespace divdiv::test;

namespace {

TetElement random_tet(std::uint64_t seed) {
  RationalRng rng(seed);
  return TetElement(rng.tetrahedron());
}

/// Points of the order-m lattice on triangle (a, b, c); P_m on the triangle is
/// determined by its values there.
std::vector<Vec3> lattice(const Vec3& a, const Vec3& b, const Vec3& c, int m) {
  std::vector<Vec3> pts;
  if (m == 0) return {q(1, 3) * (a + b + c)};
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j) pts.push_back(a + q(i, m) * (b - a) + q(j, m) * (c - a));
  return pts;
}

/// Nullity of the point-evaluation constraints `eval` over a parent basis, by Bareiss.
template <class Eval>
std::size_t nullity_by_points(const PolySpace& parent, Eval eval) {
  std::vector<RatVector> rows;
  for (std::size_t j = 0; j < parent.dim(); ++j) {
    const RatVector col = eval(parent[j]);
    if (rows.empty()) rows.assign(col.size(), RatVector(parent.dim()));
    for (std::size_t i = 0; i < col.size(); ++i) rows[i][j] = col[i];
  }
  return parent.dim() - bareiss_rank(RatMatrix::from_rows(rows, parent.dim()));
}

std::array<std::array<int, 3>, 4> face_vertex_sets() { return {{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}}; }

Rational l2(const TensorField& a, const TensorField& b, const TetElement& k) {
  Polynomial p;
  for (std::size_t i = 0; i < a.size(); ++i) p += a[i] * b[i];
  return k.integrate(p);
}

std::vector<std::size_t> rows_in_groups(const FiniteElementDef& def, const std::vector<std::string>& groups) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < def.dofs.size(); ++i)
    if (std::find(groups.begin(), groups.end(), def.dofs[i].group) != groups.end()) out.push_back(i);
  return out;
}

}  // namespace

TEST_SUITE("elements_tet") {

TEST_CASE("barycentric coordinates") {
  const TetElement k = random_tet(4);
  Polynomial sum;
  for (int i = 0; i < 4; ++i) {
    sum += k.lambda(i);
    for (int j = 0; j < 4; ++j) CHECK(k.lambda(i).evaluate(k.vertex(j)) == (i == j ? 1 : 0));
  }
  CHECK(sum == Polynomial(1));
  CHECK(sgn(k.det()) > 0);
  CHECK_THROWS(TetElement({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 1, 0}}));
}

TEST_CASE("face frames and bubbles") {
  const TetElement k = random_tet(5);
  for (int f = 0; f < 4; ++f) {
    const FaceFrame& fr = k.face_frame(f);
    const Entity face = k.face_entity(f);
    // The frame normal carries the parameter area factor.
    CHECK(norm2(fr.normal) == face.metric_squared());
    CHECK(dot(fr.normal, face.axes[0]) == 0);
    CHECK(restrict_to_entity(k.face_bubble(f), face).is_zero() == false);
    CHECK(restrict_to_entity(k.cell_bubble(), face).is_zero());
    for (int g = 0; g < 4; ++g)
      if (g != f) CHECK(restrict_to_entity(k.face_bubble(f), k.face_entity(g)).is_zero());
  }
  for (int e = 0; e < 6; ++e) {
    const EdgeFrame& fr = k.edge_frame(e);
    CHECK(dot(fr.tangent, fr.n_plus) == 0);
    CHECK(dot(fr.tangent, fr.n_minus) == 0);
    CHECK(dot(fr.n_plus, fr.n_minus) == 0);
  }
}

TEST_CASE("edge frame decomposition of the divergence") {
  RationalRng rng(6);
  const TetElement k = random_tet(7);
  for (int s = 0; s < 100; ++s) {
    const TensorField v = rng.field(Shape::vector, 3);
    const EdgeFrame& fr = k.edge_frame(s % 6);
    Polynomial sum;
    for (const Vec3& e : {fr.tangent, fr.n_plus, fr.n_minus})
      sum += directional_derivative(scalar(dot(v, e)), e).value() * (Rational(1) / norm2(e));
    CHECK(sum == div(v).value());
  }
}

TEST_CASE("tangential-trace-free fields W_m") {
  const TetElement k = random_tet(8);
  const auto fv = face_vertex_sets();
  for (int m = 1; m <= 3; ++m) {
    const ConstrainedSpace w = space_W(m, k);
    CHECK(w.space.dim() == w.parent.dim() - w.constraint_rank);
    const std::size_t oracle = nullity_by_points(w.parent, [&](const TensorField& phi) {
      RatVector out;
      for (int f = 0; f < 4; ++f) {
        const Vec3 n = k.face_frame(f).normal;
        const auto& ids = fv[static_cast<std::size_t>(f)];
        for (const Vec3& x : lattice(k.vertex(ids[0]), k.vertex(ids[1]), k.vertex(ids[2]), m)) {
          const Vec3 val{phi[0].evaluate(x), phi[1].evaluate(x), phi[2].evaluate(x)};
          for (const Rational& c : cross(val, n)) out.push_back(c);
        }
      }
      return out;
    });
    CHECK(w.space.dim() == oracle);
    if (m == 1) CHECK(w.space.dim() == 0);
  }
  // The quartic bubble times any constant vector.
  const ConstrainedSpace w4 = space_W(4, k);
  const SpanTester span4(w4.space.basis());
  CHECK(span4.contains(vec(k.cell_bubble(), Polynomial(0), Polynomial(0))));
  CHECK(span4.contains(vec(Polynomial(0), k.cell_bubble() * q(3, 2), k.cell_bubble())));
}

TEST_CASE("symmetric fields with vanishing face operators M_m") {
  const TetElement k = random_tet(9);
  const auto fv = face_vertex_sets();

  // Constant symmetric tau with Q_f tau Q_f = 0 on four faces is zero.
  const PolySpace consts = symmetric_polys(0);
  CHECK(consts.dim() == 6);
  std::vector<RatVector> rows;
  for (int f = 0; f < 4; ++f)
    for (int e = 0; e < 9; ++e) {
      RatVector r(6);
      for (std::size_t j = 0; j < 6; ++j)
        r[j] = q_f_two_sided(consts[j], k.face_frame(f))[static_cast<std::size_t>(e)].evaluate({0, 0, 0});
      rows.push_back(r);
    }
  CHECK(bareiss_rank(RatMatrix::from_rows(rows, 6)) == 6);

  for (int m = 2; m <= 3; ++m) {
    const ConstrainedSpace mm = space_M(m, k);
    CHECK(mm.space.dim() == mm.parent.dim() - mm.constraint_rank);
    const std::size_t oracle = nullity_by_points(mm.parent, [&](const TensorField& tau) {
      RatVector out;
      for (int f = 0; f < 4; ++f) {
        const FaceFrame& fr = k.face_frame(f);
        const auto& ids = fv[static_cast<std::size_t>(f)];
        const TensorField a = lambda_f(tau, fr), b = q_f_two_sided(tau, fr);
        for (const Vec3& x : lattice(k.vertex(ids[0]), k.vertex(ids[1]), k.vertex(ids[2]), m - 1))
          for (const auto& p : a.entries()) out.push_back(p.evaluate(x));
        for (const Vec3& x : lattice(k.vertex(ids[0]), k.vertex(ids[1]), k.vertex(ids[2]), m))
          for (const auto& p : b.entries()) out.push_back(p.evaluate(x));
      }
      return out;
    });
    CHECK(mm.space.dim() == oracle);
    for (const auto& tau : mm.space.basis())
      for (int f = 0; f < 4; ++f) {
        const TensorField a = lambda_f(tau, k.face_frame(f));
        for (const auto& p : a.entries()) CHECK(restrict_to_entity(p, k.face_entity(f)).is_zero());
      }
  }
}

TEST_CASE("interior test spaces") {
  const TetElement k = random_tet(10);
  const std::vector<TensorField> rm = rigid_motions();
  CHECK(rm.size() == 6);
  for (const auto& r : rm) CHECK(eps(r).is_zero());

  for (int deg = 4; deg <= 5; ++deg) {
    const long kk = deg;
    const PolySpace w = space_W_quotient(deg, k);
    CHECK(w.dim() == static_cast<std::size_t>((2 * kk * kk * kk - 3 * kk * kk - 5 * kk - 12) / 6));
    for (const auto& f : w.basis()) {
      CHECK(f.degree() <= deg - 1);
      for (const auto& r : rm) CHECK(l2(f, r, k) == 0);
    }

    const PolySpace m = space_M_image(deg, k);
    CHECK(m.dim() == static_cast<std::size_t>((kk * kk * kk - 3 * kk * kk - 4 * kk + 12) / 2));
    for (const auto& f : m.basis()) {
      CHECK(f.satisfies(SymmetryTag::symmetric));
      CHECK(div(f).is_zero());
      CHECK(f.degree() <= deg);
    }
  }
  CHECK(space_W_quotient(4, k).dim() == 8);
  CHECK(space_W_quotient(5, k).dim() == 23);
  CHECK(space_M_image(4, k).dim() == 6);
  CHECK(space_M_image(5, k).dim() == 21);
}

TEST_CASE("divergence bubbles") {
  const TetElement k = random_tet(11);
  const ConstrainedSpace p2 = space_Pdiv_bubble(2, k);
  CHECK(p2.parent.dim() == 3);
  CHECK(p2.space.dim() == 0);
  for (int deg = 3; deg <= 5; ++deg) {
    const ConstrainedSpace p = space_Pdiv_bubble(deg, k);
    CHECK(p.space.dim() == p.parent.dim() - p.constraint_rank);
    // div(b p) = grad(b) . p on each face, so the constraint is a vanishing normal trace of p.
    // Counting: 3 dim P_m minus four face traces of dim P_m(face), with m = deg - 2.
    const int m = deg - 2;
    CHECK(p.space.dim() == static_cast<std::size_t>((m + 1) * (m + 2) * (m - 1) / 2));
    for (const auto& f : p.space.basis())
      for (int face = 0; face < 4; ++face) {
        CHECK(restrict_to_entity(div(f).value(), k.face_entity(face)).is_zero());
        for (std::size_t i = 0; i < 3; ++i) CHECK(restrict_to_entity(f[i], k.face_entity(face)).is_zero());
      }
  }
}

TEST_CASE("face weights vanishing at the vertices") {
  const PolySpace p = space_Ptilde_face(3);
  CHECK(p.dim() == 7);
  const PolySpace p2 = space_Ptilde_face(2);
  CHECK(p2.dim() == 3);
  const Polynomial s = X(), t = Y(), r = 1 - X() - Y();
  const SpanTester span2(p2.basis());
  CHECK(span2.contains(scalar(s * t)));
  CHECK(span2.contains(scalar(s * r)));
  CHECK(span2.contains(scalar(t * r)));
  CHECK_FALSE(span2.contains(scalar(Polynomial(1))));
  for (const auto& f : p.basis())
    for (const Vec3& v : {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}) CHECK(f.value().evaluate(v) == 0);
}

TEST_CASE("tet DOF counts") {
  const TetElement k = reference_tet();
  const FiniteElementDef s = make_tet_element(TetFamily::Sigma, 4, k);
  const FiniteElementDef u = make_tet_element(TetFamily::U, 4, k);
  const FiniteElementDef v = make_tet_element(TetFamily::V, 4, k);
  CHECK(s.dofs.size() == 210);
  CHECK(u.dofs.size() == 448);
  CHECK(v.dofs.size() == 252);
  CHECK(s.dim() == 210);
  CHECK(u.dim() == 448);
  CHECK(v.dim() == 252);
  CHECK(make_tet_element(TetFamily::Sigma, 3, k).dofs.size() == 120);
  CHECK(make_tet_element(TetFamily::Q, 4, k).dofs.size() == 10);
  CHECK_THROWS_AS(make_tet_element(TetFamily::U, 3, k), std::invalid_argument);
  CHECK_THROWS_AS(make_tet_element(TetFamily::Sigma, 2, k), std::invalid_argument);

  // Entity-weighted counts of the global dimension formulas at k = 4.
  CHECK(v.dofs_per_entity()[TetElement::vertex_index(0)] == 36);
  CHECK(v.dofs_per_entity()[TetElement::edge_index(0)] == 11 * 4 - 29);
  CHECK(v.dofs_per_entity()[TetElement::face_index(0)] == 2 * 16 - 44 + 15);
  CHECK(u.dofs_per_entity()[TetElement::vertex_index(0)] == 41);
  CHECK(u.dofs_per_entity()[TetElement::edge_index(0)] == 16 * 4 - 30);
  CHECK(s.dofs_per_entity()[TetElement::vertex_index(0)] == 9);
  CHECK(s.dofs_per_entity()[TetElement::face_index(3)] == 2 * 16 - 16);
}

TEST_CASE("tet unisolvence") {
  for (const TetElement& k : {reference_tet(), random_tet(12)}) {
    const UnisolvenceCertificate c = certify_unisolvence(make_tet_element(TetFamily::Sigma, 3, k));
    CHECK(c.square);
    CHECK(c.nonsingular);
  }
  const UnisolvenceCertificate v = certify_unisolvence(make_tet_element(TetFamily::V, 4, random_tet(13)));
  CHECK(v.nonsingular);
  CHECK(v.rank == 252);
}

TEST_CASE("traction DOFs of U read sym curl") {
  // The U edge-frame functionals evaluate t^T sigma n on sigma = sym curl u; they must
  // agree with the Sigma element's edge-frame functionals applied to sym curl u directly.
  RationalRng rng(14, 3);
  const TetElement k = random_tet(15);
  const FiniteElementDef u = make_tet_element(TetFamily::U, 4, k);
  const FiniteElementDef s = make_tet_element(TetFamily::Sigma, 4, k);
  const auto ur = rows_in_groups(u, {"edge-frame"});
  const auto sr = rows_in_groups(s, {"edge-frame"});
  REQUIRE(ur.size() == sr.size());
  DofEvaluator eu(u), es(s);
  for (int t = 0; t < 5; ++t) {
    RatVector c(u.dim());
    for (auto& e : c) e = rng.next();
    const TensorField field = u.shape.combine(c);
    CHECK(eu.evaluate(field, ur) == es.evaluate(sym_curl(field), sr));
  }
}

TEST_CASE("U bubbles map to Sigma bubbles") {
  // Fields killed by every boundary functional of U have sym curl killed by every
  // boundary functional of Sigma: the boundary DOFs of U control sigma n and div sigma . n.
  const TetElement k = random_tet(16);
  const FiniteElementDef u = make_tet_element(TetFamily::U, 4, k);
  const FiniteElementDef s = make_tet_element(TetFamily::Sigma, 4, k);
  const std::vector<std::string> u_interior{"interior-grad-W", "interior-M", "interior-devgrad"};
  const std::vector<std::string> s_interior{"interior-hessian", "interior-grad-W", "interior-M"};
  std::vector<std::size_t> ub, sb;
  for (std::size_t i = 0; i < u.dofs.size(); ++i)
    if (std::find(u_interior.begin(), u_interior.end(), u.dofs[i].group) == u_interior.end()) ub.push_back(i);
  for (std::size_t i = 0; i < s.dofs.size(); ++i)
    if (std::find(s_interior.begin(), s_interior.end(), s.dofs[i].group) == s_interior.end()) sb.push_back(i);

  const RatMatrix boundary = dof_matrix(u).select_rows(ub);
  const RankResult r = exact_rank(boundary);
  CHECK(r.nullspace.size() == u.dim() - ub.size());
  CHECK(r.nullspace.size() == 20);
  DofEvaluator es(s);
  for (const auto& c : r.nullspace) {
    const TensorField sigma = sym_curl(u.shape.combine(c));
    CHECK(es.evaluate(sigma, sb) == RatVector(sb.size()));
  }
}

TEST_CASE("interpolation reproduction at k = 4") {
  RationalRng rng(17);
  const TetElement k = random_tet(18);
  for (auto f : {TetFamily::Sigma, TetFamily::U, TetFamily::V}) {
    const FiniteElementDef def = make_tet_element(f, 4, k);
    RatVector c(def.dim());
    for (auto& e : c) e = rng.next();
    const TensorField field = def.shape.combine(c);
    CHECK(interpolate_local(def, dof_matrix(def), field).field == field);
  }
}

}  // TEST_SUITE
