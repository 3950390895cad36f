#include "divdiv/rational.hpp"

#include <stdexcept>

namespace divdiv {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto not_space = s.find_first_not_of(" \t");
  if (not_space == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(not_space, s.find_last_not_of(" \t") - not_space + 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(const Rational& s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
Rational dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational norm2(const Vec3& a) { return dot(a, a); }
bool is_zero(const Vec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

Vec3 unit_vector(int axis) {
  Vec3 e{Rational(0), Rational(0), Rational(0)};
  e[static_cast<std::size_t>(axis)] = 1;
  return e;
}

}  // namespace divdiv
