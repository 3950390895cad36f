#pragma once

#include "divdiv/operators.hpp"
#include "divdiv/polynomial.hpp"
#include "divdiv/tensor_field.hpp"

namespace divdiv::test {

inline Polynomial X() { return Polynomial::variable(0); }
inline Polynomial Y() { return Polynomial::variable(1); }
inline Polynomial Z() { return Polynomial::variable(2); }

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline TensorField vec(Polynomial a, Polynomial b, Polynomial c) {
  return TensorField::vector({std::move(a), std::move(b), std::move(c)});
}

inline TensorField scalar(Polynomial p) { return TensorField::scalar(std::move(p)); }

}  // namespace divdiv::test
