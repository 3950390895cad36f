#include "divdiv/frames.hpp"

#include <stdexcept>

namespace divdiv {

Vec3 mat_apply(const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = a[3 * i] * v[0] + a[3 * i + 1] * v[1] + a[3 * i + 2] * v[2];
  return r;
}

FaceFrame make_face_frame(const Vec3& normal, const Vec3& t_plus) {
  if (is_zero(normal) || is_zero(t_plus)) throw std::invalid_argument("degenerate face frame");
  if (dot(normal, t_plus) != 0) throw std::invalid_argument("face tangent not orthogonal to normal");
  FaceFrame f;
  f.normal = normal;
  f.normal_norm2 = norm2(normal);
  f.t_plus = t_plus;
  f.t_minus = cross(normal, t_plus);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      f.projector[3 * i + j] = (i == j ? Rational(1) : Rational(0)) - normal[i] * normal[j] / f.normal_norm2;
  return f;
}

FaceFrame axis_face_frame(int axis) {
  const int a = axis == 0 ? 1 : 0;
  return make_face_frame(unit_vector(axis), unit_vector(a));
}

EdgeFrame make_edge_frame(const Vec3& tangent) {
  if (is_zero(tangent)) throw std::invalid_argument("degenerate edge tangent");
  std::size_t m = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (abs(tangent[i]) < abs(tangent[m])) m = i;
  const Vec3 e = unit_vector(static_cast<int>(m));
  EdgeFrame fr;
  fr.tangent = tangent;
  fr.n_plus = norm2(tangent) * e - tangent[m] * tangent;
  fr.n_minus = cross(tangent, fr.n_plus);
  return fr;
}

TensorField pi_f(const TensorField& v, const FaceFrame& f) {
  if (v.shape() != Shape::vector) throw std::invalid_argument("pi_f expects a vector field");
  std::array<Polynomial, 3> out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (f.projector[3 * i + j] != 0) out[i].add_scaled(v[j], f.projector[3 * i + j]);
  return TensorField::vector(out);
}

TensorField grad_f(const TensorField& q, const FaceFrame& f) {
  if (q.shape() == Shape::scalar) return pi_f(grad(q), f);
  if (q.shape() != Shape::vector) throw std::invalid_argument("grad_f expects a scalar or vector field");
  return mat_mul(grad(q), f.projector);
}

TensorField eps_f(const TensorField& v, const FaceFrame& f) { return sym(grad_f(pi_f(v, f), f)); }

TensorField div_f(const TensorField& w, const FaceFrame& f) {
  if (w.shape() != Shape::vector) throw std::invalid_argument("div_f expects a vector field");
  return trace(mat_mul(f.projector, grad(w)));
}

// (n x grad) . v, contracted directly rather than through curl.
TensorField rot_f(const TensorField& v, const FaceFrame& f) {
  if (v.shape() != Shape::vector) throw std::invalid_argument("rot_f expects a vector field");
  const Vec3& n = f.normal;
  Polynomial out;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    out.add_scaled(v[i].derivative(static_cast<int>(k)), n[j]);
    out.add_scaled(v[i].derivative(static_cast<int>(j)), -n[k]);
  }
  return TensorField::scalar(out);
}

TensorField curl_f_row(const TensorField& q, const FaceFrame& f) {
  const Vec3& n = f.normal;
  auto ncross = [&](const Polynomial& s) {
    const Polynomial d0 = s.derivative(0), d1 = s.derivative(1), d2 = s.derivative(2);
    return std::array<Polynomial, 3>{d2 * n[1] - d1 * n[2], d0 * n[2] - d2 * n[0], d1 * n[0] - d0 * n[1]};
  };
  if (q.shape() == Shape::scalar) return TensorField::vector(ncross(q.value()));
  if (q.shape() != Shape::vector) throw std::invalid_argument("curl_f_row expects a scalar or vector field");
  std::array<Polynomial, 9> e;
  for (std::size_t i = 0; i < 3; ++i) {
    auto r = ncross(q[i]);
    for (std::size_t j = 0; j < 3; ++j) e[3 * i + j] = std::move(r[j]);
  }
  return TensorField::matrix(e);
}

TensorField lambda_f(const TensorField& sigma, const FaceFrame& f) {
  if (!sigma.satisfies(SymmetryTag::symmetric)) throw std::invalid_argument("lambda_f expects a symmetric field");
  TensorField inner = eps(mat_vec(sigma, f.normal)) * Rational(2) - directional_derivative(sigma, f.normal);
  TensorField out = mat_mul(mat_mul(f.projector, inner), f.projector);
  return out.with_tag(SymmetryTag::symmetric);
}

TensorField q_f_sym(const TensorField& sigma, const FaceFrame& f) { return sym(mat_mul(f.projector, sigma)); }

TensorField q_f_two_sided(const TensorField& sigma, const FaceFrame& f) {
  return mat_mul(mat_mul(f.projector, sigma), f.projector);
}

}  // namespace divdiv
