#pragma once

#include "divdiv/rational.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace divdiv {

/// Exponent triple (a, b, c) of the monomial x^a y^b z^c.
struct MultiIndex {
  std::array<int, 3> e{0, 0, 0};

  constexpr MultiIndex() = default;
  constexpr MultiIndex(int a, int b, int c) : e{a, b, c} {}

  constexpr int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  constexpr int total() const { return e[0] + e[1] + e[2]; }

  /// Packs into 10 bits per variable; all exponents must lie in [0, 1023].
  std::uint32_t pack() const;
  static MultiIndex unpack(std::uint32_t key);

  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Graded-lexicographic order: by total degree, then x-exponent descending,
/// then y-exponent descending.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// Sparse polynomial in three variables with exact rational coefficients.
/// Terms are kept sorted by packed key and never hold a zero coefficient.
class Polynomial {
 public:
  struct Term {
    std::uint32_t key;
    Rational coeff;
    MultiIndex exponents() const { return MultiIndex::unpack(key); }
  };

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c);             // NOLINT(google-explicit-constructor)

  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1);
  static Polynomial variable(int axis);
  /// Builds from unsorted (key, coeff) pairs, merging duplicates.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Degree in one variable; -1 for the zero polynomial.
  int degree_in(int axis) const;

  Rational coefficient(const MultiIndex& alpha) const;
  Rational evaluate(const Vec3& x) const;
  Polynomial derivative(int axis) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  /// this += s * o
  Polynomial& add_scaled(const Polynomial& o, const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(Polynomial a, long s) { return a *= Rational(s); }
  friend Polynomial operator*(long s, Polynomial a) { return a *= Rational(s); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(int n) const;
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

Polynomial differentiate(const Polynomial& p, int axis);

/// Substitution x = origin + sum_j s_j * axes[j], producing a polynomial in s.
/// Monomial images are cached, so one instance should serve many calls.
class AffinePullback {
 public:
  AffinePullback(const Vec3& origin, const std::vector<Vec3>& axes);
  Polynomial apply(const Polynomial& p);
  const Polynomial& monomial_image(std::uint32_t key);

 private:
  const Polynomial& power(int var, int e);
  std::array<std::vector<Polynomial>, 3> powers_;
  std::unordered_map<std::uint32_t, Polynomial> cache_;
};

/// Monomial exponent lists in graded-lexicographic order.
std::vector<MultiIndex> monomials_total_degree(int k);
std::vector<MultiIndex> monomials_per_variable(int k1, int k2, int k3);

}  // namespace divdiv
