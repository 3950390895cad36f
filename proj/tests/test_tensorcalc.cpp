#include "divdiv/frames.hpp"
#include "divdiv/green.hpp"
#include "divdiv/integration.hpp"
#include "divdiv/operators.hpp"
#include "divdiv/random.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace divdiv;
using namespace divdiv::test;

namespace {

FaceFrame random_face_frame(RationalRng& rng) {
  Vec3 n = rng.vec3();
  while (is_zero(n)) n = rng.vec3();
  return make_face_frame(n, make_edge_frame(n).n_plus);
}

std::size_t cyc(int i) { return static_cast<std::size_t>(((i % 3) + 3) % 3); }

/// Entrywise sym curl on traceless u written out with cyclic indices; an independent
/// path from operators.cpp. Diagonal: d_{i+1} u_{i,i+2} - d_{i+2} u_{i,i+1};
/// off-diagonal (i,j,l a cyclic triple): 1/2 (d_l u_ii - d_l u_jj + d_j u_jl - d_i u_il).
TensorField sym_curl_by_components(const TensorField& u) {
  std::array<Polynomial, 9> s;
  auto e = [&](int i, int j) -> const Polynomial& { return u(static_cast<int>(cyc(i)), static_cast<int>(cyc(j))); };
  for (int i = 0; i < 3; ++i) s[4 * cyc(i)] = e(i, i + 2).derivative(static_cast<int>(cyc(i + 1))) -
                                            e(i, i + 1).derivative(static_cast<int>(cyc(i + 2)));
  for (int i = 0; i < 3; ++i) {
    const int j = static_cast<int>(cyc(i + 1)), l = static_cast<int>(cyc(i + 2));
    const Polynomial v = (e(i, i).derivative(l) - e(j, j).derivative(l) + e(j, l).derivative(j) -
                          e(i, l).derivative(i)) *
                         q(1, 2);
    s[3 * cyc(i) + cyc(j)] = v;
    s[3 * cyc(j) + cyc(i)] = v;
  }
  return TensorField::matrix(s, SymmetryTag::symmetric);
}

}  // namespace

TEST_SUITE("tensorcalc") {

TEST_CASE("bar index map") {
  CHECK(bar(0) == 3);
  CHECK(bar(1) == 1);
  CHECK(bar(3) == 3);
  CHECK(bar(4) == 1);
  CHECK(bar(5) == 2);
  CHECK(bar(-1) == 2);
}

TEST_CASE("first order operators") {
  const TensorField g = grad(scalar(X() * X() * Y() * Z()));
  CHECK(curl(g).is_zero());

  const TensorField v = vec(X() * Y(), Z() * Z(), X());
  // Expanded by hand: curl v = (-2z, -1, -x).
  CHECK(curl(v) == vec(-2 * Z(), Polynomial(-1), -X()));
  CHECK(div(mspn(v)) == vec(2 * Z(), Polynomial(1), X()));
  CHECK(div(mspn(v)) == curl(v) * Rational(-1));

  RationalRng rng(8);
  for (int s = 0; s < 20; ++s) {
    const TensorField sigma = rng.field(Shape::matrix, 3, SymmetryTag::symmetric);
    CHECK(div_col(sigma) == div(sigma));
    CHECK(div(curl(sigma)).is_zero());
    CHECK(curl_col(sigma) == transpose(curl(transpose(sigma))));
  }

  CHECK_THROWS_AS(div(scalar(X())), std::invalid_argument);
  CHECK_THROWS_AS(curl(scalar(X())), std::invalid_argument);
  CHECK_THROWS_AS(div_col(v), std::invalid_argument);
}

TEST_CASE("algebraic operators") {
  CHECK(dev(constant_matrix_field(identity3())).is_zero());
  RationalRng rng(9);
  for (int s = 0; s < 100; ++s) {
    const TensorField a = rng.field(Shape::matrix, 2);
    const TensorField v = rng.field(Shape::vector, 2);
    CHECK(sym(mspn(v)).is_zero());
    CHECK(trace(dev(a)).is_zero());
    CHECK(dev(a).tag() == SymmetryTag::traceless);
    CHECK(sym(a).tag() == SymmetryTag::symmetric);
    CHECK(sym(a).satisfies(SymmetryTag::symmetric));
    CHECK(skw(a).satisfies(SymmetryTag::skew));
    CHECK(sym(a) + skw(a) == a);
  }
  CHECK_THROWS_AS(mspn(scalar(X())), std::invalid_argument);
  CHECK_THROWS_AS(trace(vec(X(), Y(), Z())), std::invalid_argument);
}

TEST_CASE("dev grad") {
  CHECK(dev_grad(vec(X(), Y(), Z())).is_zero());
  const TensorField e = dev_grad(vec(Y(), Polynomial(0), Polynomial(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(e(i, j) == Polynomial(i == 0 && j == 1 ? 1 : 0));

  RationalRng rng(10);
  for (int s = 0; s < 100; ++s) {
    const TensorField v = rng.field(Shape::vector, 3);
    const TensorField u = dev_grad(v);
    CHECK(u.satisfies(SymmetryTag::traceless));
    CHECK(u.degree() <= 2);
    // 3 curl(dev grad v) = mspn(grad div v)
    CHECK(curl(u) * Rational(3) == mspn(grad(div(v))));
  }
}

TEST_CASE("sym curl") {
  CHECK(sym_curl(dev_grad(vec(X() * X() * Y(), Y() * Z() * Z(), X() + Z()))).is_zero());
  Mat3 c{1, 2, 3, 4, 5, 6, 7, 8, -6};
  CHECK(sym_curl(constant_matrix_field(c, SymmetryTag::traceless)).is_zero());

  RationalRng rng(12);
  for (int s = 0; s < 100; ++s) {
    const TensorField u = rng.field(Shape::matrix, 4, SymmetryTag::traceless);
    const TensorField sigma = sym_curl(u);
    CHECK(sigma.satisfies(SymmetryTag::symmetric));
    CHECK(sigma == sym_curl_by_components(u));
  }
}

TEST_CASE("column divergence of traceless fields rearranges into curl-type pairs") {
  RationalRng rng(13);
  for (int s = 0; s < 100; ++s) {
    const TensorField u = rng.field(Shape::matrix, 3, SymmetryTag::traceless);
    const TensorField d = div_col(u);
    for (int j = 0; j < 3; ++j) {
      Polynomial expect;
      for (int m = 0; m < 3; ++m)
        if (m != j) expect += u(m, j).derivative(m) - u(m, m).derivative(j);
      CHECK(d[static_cast<std::size_t>(j)] == expect);
    }
  }
}

TEST_CASE("div div") {
  TensorField sigma = Polynomial(X() * X()) * constant_matrix_field(identity3(), SymmetryTag::symmetric);
  sigma.with_tag(SymmetryTag::symmetric);
  CHECK(div_div(sigma) == scalar(Polynomial(2)));
  RationalRng rng(14);
  for (int s = 0; s < 100; ++s) {
    CHECK(div_div(sym_curl(rng.field(Shape::matrix, 4, SymmetryTag::traceless))).is_zero());
    CHECK(div_div(rng.field(Shape::matrix, 4, SymmetryTag::skew)).is_zero());
  }
  CHECK(hessian(scalar(X() * X() * Y())) ==
        TensorField::matrix({2 * Y(), 2 * X(), 0, 2 * X(), 0, 0, 0, 0, 0}, SymmetryTag::symmetric));
}

TEST_CASE("face and edge frames") {
  RationalRng rng(15);
  for (int s = 0; s < 100; ++s) {
    const FaceFrame f = random_face_frame(rng);
    CHECK(dot(f.normal, f.t_plus) == 0);
    CHECK(dot(f.normal, f.t_minus) == 0);
    CHECK(is_zero(mat_apply(f.projector, f.normal)));
    const Vec3 w = rng.vec3();
    CHECK(mat_apply(f.projector, mat_apply(f.projector, w)) == mat_apply(f.projector, w));

    const EdgeFrame e = make_edge_frame(rng.vec3() + Vec3{0, 0, 7});
    CHECK(dot(e.tangent, e.n_plus) == 0);
    CHECK(dot(e.tangent, e.n_minus) == 0);
    CHECK(dot(e.n_plus, e.n_minus) == 0);
    CHECK_FALSE(is_zero(e.n_plus));
    CHECK_FALSE(is_zero(e.n_minus));
  }
  CHECK_THROWS_AS(make_face_frame({1, 0, 0}, {1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_edge_frame({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("surface operators") {
  RationalRng rng(16);
  Mat3 c{1, 2, 3, 2, 5, 6, 3, 6, 9};
  for (int s = 0; s < 100; ++s) {
    const FaceFrame f = random_face_frame(rng);
    CHECK(lambda_f(constant_matrix_field(c, SymmetryTag::symmetric), f).is_zero());

    const TensorField sigma = rng.field(Shape::matrix, 3, SymmetryTag::symmetric);
    CHECK(contract(f.normal, lambda_f(sigma, f), f.normal).is_zero());

    const TensorField v = rng.field(Shape::vector, 3);
    CHECK(rot_f(v, f).value() == dot(curl(v), f.normal));
    CHECK(dot(pi_f(v, f), f.normal).is_zero());
    CHECK(dot(grad_f(scalar(v[0]), f), f.normal).is_zero());
    // Row i of curl_f_row is n x grad(v_i).
    const TensorField rows = curl_f_row(v, f);
    CHECK(mat_vec(rows, f.normal).is_zero());
  }
  CHECK_THROWS_AS(lambda_f(rng.field(Shape::matrix, 2), axis_face_frame(0)), std::invalid_argument);
}

TEST_CASE("Green identities: hand-expanded case") {
  const TetVertices ref{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  const TensorField id = constant_matrix_field(identity3(), SymmetryTag::symmetric);
  const auto res = verify_green_identities(id, scalar(X()), ref);
  CHECK(res[0] == 0);
  CHECK(res[1] == 0);

  // The traction term (sigma n, grad q)_f = n_x |f| is nonzero on two faces and cancels.
  // With N the cross product of the triangle axes, the parametric integral of N . grad q
  // is the physical face integral of n . grad q.
  const std::array<std::array<int, 3>, 4> faces{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
  std::vector<Rational> terms;
  for (const auto& f : faces) {
    const auto a = ref[static_cast<std::size_t>(f[0])], b = ref[static_cast<std::size_t>(f[1])],
               c = ref[static_cast<std::size_t>(f[2])];
    Vec3 n = cross(b - a, c - a);
    const Vec3 centroid = q(1, 4) * (ref[0] + ref[1] + ref[2] + ref[3]);
    if (dot(n, a - centroid) < 0) n = Rational(-1) * n;
    terms.push_back(integrate_on_entity(Polynomial(n[0]), make_triangle(a, b, c)).parametric);
  }
  CHECK(terms[0] == q(1, 2));
  CHECK(terms[1] == q(-1, 2));
  CHECK(terms[0] + terms[1] + terms[2] + terms[3] == 0);

  TensorField x2 = Polynomial(X() * X()) * id;
  x2.with_tag(SymmetryTag::symmetric);
  const GreenTerms t = green_terms(x2, scalar(X()), ref);
  CHECK(t.lhs == q(1, 12));
  CHECK(t.residual_normal_div() == 0);
  CHECK(t.residual_edge_form() == 0);
}

TEST_CASE("Green identities on random tetrahedra") {
  RationalRng rng(17, 4);
  for (int s = 0; s < 100; ++s) {
    const auto res = verify_green_identities(rng.field(Shape::matrix, 2, SymmetryTag::symmetric),
                                             rng.field(Shape::scalar, 3), rng.tetrahedron());
    CHECK(res[0] == 0);
    CHECK(res[1] == 0);
  }
  const TetVertices flat{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 1, 0}};
  CHECK_THROWS_AS(verify_green_identities(constant_matrix_field(identity3(), SymmetryTag::symmetric),
                                          scalar(X()), flat),
                  std::invalid_argument);
}

}  // TEST_SUITE
