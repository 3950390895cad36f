#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <string_view>

namespace divdiv {

/// Exact rational number in canonical form (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q"; the result is canonicalized.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Formats as "p" when the denominator is 1 and as "p/q" otherwise.
std::string to_string(const Rational& r);

Integer factorial(unsigned n);

/// Point or direction in R^3 with exact coordinates.
using Vec3 = std::array<Rational, 3>;

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Rational& s, const Vec3& a);
Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Rational norm2(const Vec3& a);
bool is_zero(const Vec3& a);
Vec3 unit_vector(int axis);

}  // namespace divdiv
