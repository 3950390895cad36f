#pragma once

#include "divdiv/tensor_field.hpp"

namespace divdiv {

/// Gradient: scalar -> vector, vector -> matrix with (grad v)_ij = d_j v_i.
TensorField grad(const TensorField& f);
/// Divergence: vector -> scalar, matrix -> vector applied by row.
TensorField div(const TensorField& f);
/// Curl: vector -> vector, matrix -> matrix applied by row.
TensorField curl(const TensorField& f);
/// Column-wise curl of a matrix field: curl_col(u) = curl(u^T)^T.
TensorField curl_col(const TensorField& u);
/// Column-wise divergence of a matrix field: div_col(u)_j = sum_i d_i u_ij.
TensorField div_col(const TensorField& u);

TensorField transpose(const TensorField& u);
TensorField sym(const TensorField& u);
TensorField skw(const TensorField& u);
TensorField dev(const TensorField& u);
TensorField trace(const TensorField& u);
/// Skew matrix with mspn(v) w = v x w.
TensorField mspn(const TensorField& v);

TensorField dev_grad(const TensorField& v);
TensorField sym_curl(const TensorField& u);
TensorField div_div(const TensorField& sigma);
TensorField hessian(const TensorField& q);
/// Symmetric gradient sym(grad v).
TensorField eps(const TensorField& v);

/// Directional derivative sum_i d_i partial_i applied entrywise.
TensorField directional_derivative(const TensorField& f, const Vec3& d);
/// Matrix field times constant vector.
TensorField mat_vec(const TensorField& u, const Vec3& a);
/// Constant vector times matrix field: a^T u, as a vector field.
TensorField vec_mat(const Vec3& a, const TensorField& u);
/// a^T u b for a matrix field.
Polynomial contract(const Vec3& a, const TensorField& u, const Vec3& b);
Polynomial dot(const TensorField& v, const Vec3& a);
/// Pointwise cross product of a vector field with a constant vector.
TensorField cross(const TensorField& v, const Vec3& a);
/// Constant matrix applied on the left/right of a matrix field.
TensorField mat_mul(const Mat3& a, const TensorField& u);
TensorField mat_mul(const TensorField& u, const Mat3& a);
/// Frobenius inner product sum_ij u_ij w_ij, or the dot product for vectors.
Polynomial frobenius(const TensorField& u, const TensorField& w);

/// The bar map of the index convention: the representative of n modulo 3 in {1, 2, 3}.
int bar(int n);

}  // namespace divdiv
