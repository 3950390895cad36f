#pragma once

#include "divdiv/operators.hpp"

namespace divdiv {

/// Face frame. The normal is stored unnormalized; |n|^2 is kept alongside so that
/// normalization stays symbolic. Operators that are odd in the normal are
/// evaluated with the stored vector, i.e. they equal |n| times the unit-normal value.
struct FaceFrame {
  Vec3 normal;
  Rational normal_norm2;
  Vec3 t_plus;
  Vec3 t_minus;  ///< normal x t_plus
  Mat3 projector;  ///< Q_f = I - n n^T / |n|^2
};

/// Frame from a nonzero normal and a tangent orthogonal to it.
FaceFrame make_face_frame(const Vec3& normal, const Vec3& t_plus);
/// Frame of an axis-aligned face: normal e_axis, tangents the remaining axes in increasing order.
FaceFrame axis_face_frame(int axis);

/// Edge frame: tangent and two normals, mutually orthogonal, unnormalized.
struct EdgeFrame {
  Vec3 tangent;
  Vec3 n_plus;
  Vec3 n_minus;  ///< tangent x n_plus
};

/// Deterministic frame for a tangent: n_plus is e_m - (e_m . t / |t|^2) t scaled by
/// |t|^2, where m is the axis with the smallest |t_m| (lowest index on ties).
EdgeFrame make_edge_frame(const Vec3& tangent);

Vec3 mat_apply(const Mat3& a, const Vec3& v);

/// Pi_f v = (n x v) x n for unit n, which is Q_f v.
TensorField pi_f(const TensorField& v, const FaceFrame& f);
/// Surface gradient Q_f grad q of a scalar; applied by row to a vector.
TensorField grad_f(const TensorField& q, const FaceFrame& f);
/// Surface symmetric gradient sym(grad_f(Pi_f v)).
TensorField eps_f(const TensorField& v, const FaceFrame& f);
/// Surface divergence tr(Q_f grad w) of a vector field.
TensorField div_f(const TensorField& w, const FaceFrame& f);
/// Surface rotation (n x grad) . v; odd in n.
TensorField rot_f(const TensorField& v, const FaceFrame& f);
/// Surface curl n x grad q of a scalar (odd in n); for a vector q the matrix
/// whose i-th row is n x grad q_i.
TensorField curl_f_row(const TensorField& q, const FaceFrame& f);
/// Lambda_f(sigma) = Q_f (2 eps(sigma n) - d sigma / dn) Q_f (odd in n).
TensorField lambda_f(const TensorField& sigma, const FaceFrame& f);
/// sym(Q_f sigma).
TensorField q_f_sym(const TensorField& sigma, const FaceFrame& f);
/// Q_f sigma Q_f.
TensorField q_f_two_sided(const TensorField& sigma, const FaceFrame& f);

}  // namespace divdiv
