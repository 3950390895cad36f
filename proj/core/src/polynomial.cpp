#include "divdiv/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace divdiv {

namespace {
constexpr std::uint32_t kMask = 1023;
}

std::uint32_t MultiIndex::pack() const {
  for (int v : e)
    if (v < 0 || v > static_cast<int>(kMask)) throw std::out_of_range("exponent out of range");
  return static_cast<std::uint32_t>(e[0]) | (static_cast<std::uint32_t>(e[1]) << 10) |
         (static_cast<std::uint32_t>(e[2]) << 20);
}

MultiIndex MultiIndex::unpack(std::uint32_t key) {
  return {static_cast<int>(key & kMask), static_cast<int>((key >> 10) & kMask),
          static_cast<int>((key >> 20) & kMask)};
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  if (a[0] != b[0]) return a[0] > b[0];
  return a[1] > b[1];
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({0, c});
}

Polynomial::Polynomial(long c) : Polynomial(Rational(c)) {}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({alpha.pack(), c});
  return p;
}

Polynomial Polynomial::variable(int axis) {
  MultiIndex m;
  m.e[static_cast<std::size_t>(axis)] = 1;
  return monomial(m);
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().key == t.key) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.exponents().total());
  return d;
}

int Polynomial::degree_in(int axis) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.exponents()[axis]);
  return d;
}

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  const auto key = alpha.pack();
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, std::uint32_t k) { return t.key < k; });
  if (it != terms_.end() && it->key == key) return it->coeff;
  return 0;
}

Rational Polynomial::evaluate(const Vec3& x) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    const MultiIndex m = t.exponents();
    Rational v = t.coeff;
    for (int i = 0; i < 3; ++i) {
      if (m[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), x[static_cast<std::size_t>(i)].get_num_mpz_t(),
                 static_cast<unsigned long>(m[i]));
      mpz_pow_ui(pw.get_den_mpz_t(), x[static_cast<std::size_t>(i)].get_den_mpz_t(),
                 static_cast<unsigned long>(m[i]));
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial out;
  const std::uint32_t shift = 10u * static_cast<std::uint32_t>(axis);
  for (const auto& t : terms_) {
    const std::uint32_t e = (t.key >> shift) & kMask;
    if (e == 0) continue;
    out.terms_.push_back({t.key - (1u << shift), t.coeff * e});
  }
  // Lowering one exponent preserves the relative order of the surviving keys.
  return out;
}

Polynomial& Polynomial::add_scaled(const Polynomial& o, const Rational& s) {
  if (s == 0 || o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->key < b->key)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->key < a->key) {
      merged.push_back({b->key, s * b->coeff});
      ++b;
    } else {
      Rational c = a->coeff + s * b->coeff;
      if (c != 0) merged.push_back({a->key, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) { return add_scaled(o, 1); }
Polynomial& Polynomial::operator-=(const Polynomial& o) { return add_scaled(o, -1); }

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= s;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const auto& single = a.terms_.size() == 1 ? a : b;
    const auto& other = a.terms_.size() == 1 ? b : a;
    Polynomial out;
    out.terms_.reserve(other.terms_.size());
    const auto& [k, c] = single.terms_.front();
    for (const auto& t : other.terms_) out.terms_.push_back({t.key + k, t.coeff * c});
    // Adding a fixed key keeps the order since no field overflows.
    return out;
  }
  std::vector<Polynomial::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.key + t.key, s.coeff * t.coeff});
  return Polynomial::from_terms(std::move(prod));
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::pow(int n) const {
  Polynomial result(1);
  for (int i = 0; i < n; ++i) result = result * *this;
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<Term> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
    return graded_lex_less(a.exponents(), b.exponents());
  });
  std::ostringstream os;
  bool first = true;
  static const char* names[3] = {"x", "y", "z"};
  for (const auto& t : sorted) {
    const MultiIndex m = t.exponents();
    if (!first) os << (t.coeff < 0 ? " - " : " + ");
    else if (t.coeff < 0) os << "-";
    first = false;
    const Rational mag = abs(t.coeff);
    const bool unit = mag == 1 && m.total() > 0;
    if (!unit) os << divdiv::to_string(mag);
    bool need_star = !unit;
    for (int i = 0; i < 3; ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

Polynomial differentiate(const Polynomial& p, int axis) { return p.derivative(axis); }

AffinePullback::AffinePullback(const Vec3& origin, const std::vector<Vec3>& axes) {
  for (int i = 0; i < 3; ++i) {
    Polynomial lin(origin[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < axes.size(); ++j)
      lin += Polynomial::variable(static_cast<int>(j)) * axes[j][static_cast<std::size_t>(i)];
    powers_[static_cast<std::size_t>(i)] = {Polynomial(1), lin};
  }
}

const Polynomial& AffinePullback::power(int var, int e) {
  auto& list = powers_[static_cast<std::size_t>(var)];
  while (static_cast<int>(list.size()) <= e) list.push_back(list.back() * list[1]);
  return list[static_cast<std::size_t>(e)];
}

const Polynomial& AffinePullback::monomial_image(std::uint32_t key) {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const MultiIndex m = MultiIndex::unpack(key);
  Polynomial img = power(0, m[0]) * power(1, m[1]);
  img = img * power(2, m[2]);
  return cache_.emplace(key, std::move(img)).first->second;
}

Polynomial AffinePullback::apply(const Polynomial& p) {
  std::vector<Polynomial::Term> acc;
  for (const auto& t : p.terms()) {
    const Polynomial& img = monomial_image(t.key);
    for (const auto& s : img.terms()) acc.push_back({s.key, s.coeff * t.coeff});
  }
  return Polynomial::from_terms(std::move(acc));
}

std::vector<MultiIndex> monomials_total_degree(int k) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= k; ++d)
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) out.emplace_back(a, b, d - a - b);
  return out;
}

std::vector<MultiIndex> monomials_per_variable(int k1, int k2, int k3) {
  std::vector<MultiIndex> out;
  if (k1 < 0 || k2 < 0 || k3 < 0) return out;
  for (int a = 0; a <= k1; ++a)
    for (int b = 0; b <= k2; ++b)
      for (int c = 0; c <= k3; ++c) out.emplace_back(a, b, c);
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

}  // namespace divdiv
