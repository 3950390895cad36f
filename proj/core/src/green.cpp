#include "divdiv/green.hpp"

#include "divdiv/frames.hpp"
#include "divdiv/integration.hpp"

#include <stdexcept>

namespace divdiv {

Rational integrate_tet(const Polynomial& p, const TetVertices& k) {
  const Entity cell = make_tetrahedron(k[0], k[1], k[2], k[3]);
  const auto value = integrate_on_entity(p, cell).exact_value();
  return *value;  // the squared metric of a cell is a rational square
}

GreenTerms green_terms(const TensorField& sigma, const TensorField& q, const TetVertices& k) {
  if (!sigma.satisfies(SymmetryTag::symmetric) || q.shape() != Shape::scalar)
    throw std::invalid_argument("green_terms expects a symmetric sigma and a scalar q");
  if (dot(k[1] - k[0], cross(k[2] - k[0], k[3] - k[0])) == 0) throw std::invalid_argument("degenerate tetrahedron");

  GreenTerms t;
  t.lhs = integrate_tet(div_div(sigma).value() * q.value(), k);
  t.volume = integrate_tet(frobenius(sigma, hessian(q)), k);

  const TensorField gq = grad(q);
  const TensorField dsig = div(sigma);
  for (int skip = 0; skip < 4; ++skip) {
    std::array<Vec3, 3> v;
    int c = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) v[static_cast<std::size_t>(c++)] = k[static_cast<std::size_t>(i)];
    const Vec3 opposite = k[static_cast<std::size_t>(skip)];
    const Vec3 a = v[1] - v[0], b = v[2] - v[0];
    Vec3 n = cross(a, b);
    if (dot(n, opposite - v[0]) > 0) n = Rational(-1) * n;
    const Rational n2 = norm2(n);
    const Entity face = make_triangle(v[0], v[1], v[2]);
    auto face_int = [&](const Polynomial& p) {
      return integrate_reference(restrict_to_entity(p, face), RefShape::triangle);
    };
    // With dA = |n| ds dt every term below is rational.
    const TensorField sn = mat_vec(sigma, n);
    Polynomial sn_gq;
    for (std::size_t i = 0; i < 3; ++i) sn_gq += sn[i] * gq[i];
    t.faces_normal_div += face_int(dot(dsig, n) * q.value()) - face_int(sn_gq);

    const FaceFrame frame = make_face_frame(n, a);
    const Polynomial nsn = dot(sn, n);
    const Polynomial dn_q = dot(gq, n);
    const Polynomial two_div_f = div_f(sn, frame).value() * Rational(2);
    const Polynomial dn_nsn = dot(grad(TensorField::scalar(nsn)), n) * Rational(Rational(1) / n2);
    t.faces_edge_form += -face_int(nsn * dn_q) / n2 + face_int((two_div_f + dn_nsn) * q.value());

    for (int e = 0; e < 3; ++e) {
      const Vec3& p0 = v[static_cast<std::size_t>(e)];
      const Vec3& p1 = v[static_cast<std::size_t>((e + 1) % 3)];
      const Vec3& opp = v[static_cast<std::size_t>((e + 2) % 3)];
      Vec3 m = cross(p1 - p0, n);
      if (dot(m, opp - p0) > 0) m = Rational(-1) * m;
      const Entity edge = make_segment(p0, p1);
      const Polynomial integrand = contract(m, sigma, n) * q.value();
      t.edges_edge_form -= integrate_reference(restrict_to_entity(integrand, edge), RefShape::segment) / n2;
    }
  }
  return t;
}

std::array<Rational, 2> verify_green_identities(const TensorField& sigma, const TensorField& q, const TetVertices& k) {
  const GreenTerms t = green_terms(sigma, q, k);
  return {t.residual_normal_div(), t.residual_edge_form()};
}

}  // namespace divdiv
