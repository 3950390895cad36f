#include "divdiv/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace divdiv {

namespace {

/// Rows scaled to integers by their denominator lcm; the row space is unchanged.
struct IntRows {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> a;
  std::vector<std::vector<std::uint32_t>> nz;

  const Integer& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

IntRows scale_rows(const RatMatrix& m) {
  IntRows r;
  r.rows = m.rows();
  r.cols = m.cols();
  r.a.resize(r.rows * r.cols);
  r.nz.resize(r.rows);
  Integer l;
  for (std::size_t i = 0; i < r.rows; ++i) {
    l = 1;
    for (std::size_t j = 0; j < r.cols; ++j)
      if (m(i, j) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < r.cols; ++j) {
      const Rational& v = m(i, j);
      if (v == 0) continue;
      Integer& out = r.a[i * r.cols + j];
      mpz_divexact(out.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
      out *= v.get_num();
      r.nz[i].push_back(static_cast<std::uint32_t>(j));
    }
  }
  return r;
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void reduce_row(const IntRows& m, std::size_t i, std::uint32_t p, std::uint32_t* out) {
  std::fill(out, out + m.cols, 0u);
  for (std::uint32_t j : m.nz[i])
    out[j] = static_cast<std::uint32_t>(mpz_fdiv_ui(m.at(i, j).get_mpz_t(), p));
}

/// Gauss-Jordan elimination modulo p in place; returns the pivot columns.
std::vector<std::size_t> gauss_jordan_mod(std::vector<std::uint32_t>& a, std::size_t rows,
                                          std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> nzidx;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    std::uint32_t* pr = a.data() + r * cols;
    const std::uint64_t inv = inv_mod(pr[c], p);
    nzidx.clear();
    for (std::size_t j = c; j < cols; ++j)
      if (pr[j] != 0) {
        pr[j] = static_cast<std::uint32_t>(pr[j] * inv % p);
        nzidx.push_back(j);
      }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t* ri = a.data() + i * cols;
      const std::uint32_t f = ri[c];
      if (f == 0) continue;
      const std::uint64_t g = p - f;
      for (std::size_t j : nzidx) ri[j] = static_cast<std::uint32_t>((ri[j] + g * pr[j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Indices of a maximal set of rows that are independent modulo p (hence over Q).
std::vector<std::size_t> independent_rows_mod(const IntRows& m, std::uint32_t p) {
  struct BasisRow {
    std::vector<std::uint32_t> v;
    std::vector<std::size_t> nz;
  };
  std::map<std::size_t, BasisRow> basis;
  std::vector<std::size_t> selected;
  std::vector<std::uint32_t> v(m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (basis.size() == m.cols) break;
    if (m.nz[i].empty()) continue;
    reduce_row(m, i, p, v.data());
    for (const auto& [pc, b] : basis) {
      const std::uint32_t f = v[pc];
      if (f == 0) continue;
      const std::uint64_t g = p - f;
      for (std::size_t j : b.nz) v[j] = static_cast<std::uint32_t>((v[j] + g * b.v[j]) % p);
    }
    std::size_t lead = m.cols;
    for (std::size_t j = 0; j < m.cols; ++j)
      if (v[j] != 0) {
        lead = j;
        break;
      }
    if (lead == m.cols) continue;
    BasisRow b;
    b.v = v;
    const std::uint64_t inv = inv_mod(v[lead], p);
    for (std::size_t j = lead; j < m.cols; ++j)
      if (b.v[j] != 0) {
        b.v[j] = static_cast<std::uint32_t>(b.v[j] * inv % p);
        b.nz.push_back(j);
      }
    basis.emplace(lead, std::move(b));
    selected.push_back(i);
  }
  return selected;
}

bool rational_reconstruct(const Integer& x, const Integer& modulus, const Integer& bound, Rational& out) {
  Integer r0 = modulus, r1 = x, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_qr(q.get_mpz_t(), tmp.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    r0.swap(r1);
    r1.swap(tmp);
    tmp = t0 - q * t1;
    t0.swap(t1);
    t1.swap(tmp);
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

enum class Outcome { ok, more_primes, more_rows };

/// Multi-modular RREF on the selected rows; verified against every row of m.
Outcome modular_rref(const IntRows& m, const std::vector<std::size_t>& sel, RrefResult& result) {
  const std::size_t r = sel.size();
  const std::size_t n = m.cols;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_cols;
  std::vector<Integer> res;  // r x |free|, residues modulo `modulus`
  Integer modulus = 1;
  std::vector<std::uint32_t> a(r * n);
  std::size_t fail_f = 0, fail_i = 0;
  std::size_t verify_failures = 0;

  for (std::size_t pi = 0;; ++pi) {
    if (pi >= 4096) throw std::runtime_error("rref: prime budget exhausted");
    const std::uint32_t p = word_primes(pi + 1)[pi];
    for (std::size_t i = 0; i < r; ++i) reduce_row(m, sel[i], p, a.data() + i * n);
    auto pv = gauss_jordan_mod(a, r, n, p);
    if (pv.size() < r) continue;
    if (pivots.empty() || pv < pivots) {
      pivots = pv;
      free_cols.clear();
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (k < r && pivots[k] == j) {
          ++k;
        } else {
          free_cols.push_back(j);
        }
      }
      res.assign(r * free_cols.size(), Integer(0));
      modulus = 1;
      fail_f = fail_i = 0;
    } else if (pv != pivots) {
      continue;
    }
    const std::size_t nf = free_cols.size();
    if (nf > 0) {
      const std::uint64_t minv = inv_mod(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p)), p);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t fi = 0; fi < nf; ++fi) {
          Integer& x = res[i * nf + fi];
          const std::uint64_t xo = mpz_fdiv_ui(x.get_mpz_t(), p);
          const std::uint64_t rp = a[i * n + free_cols[fi]];
          const std::uint64_t delta = (rp + p - xo) % p * minv % p;
          if (delta) mpz_addmul_ui(x.get_mpz_t(), modulus.get_mpz_t(), delta);
        }
    }
    modulus *= p;

    // Reconstruction: the recorded failing entry is probed first.
    std::vector<Rational> cand(r * nf);
    Integer bound;
    {
      Integer half = modulus / 2;
      mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    }
    bool ok = true;
    if (nf > 0) {
      Rational probe;
      if (!rational_reconstruct(res[fail_i * nf + fail_f], modulus, bound, probe)) continue;
      Integer y, half = modulus / 2;
      for (std::size_t fi = 0; fi < nf && ok; ++fi) {
        Integer d = 1;
        for (std::size_t i = 0; i < r; ++i) {
          const Integer& x = res[i * nf + fi];
          y = x * d;
          mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), modulus.get_mpz_t());
          if (y > half) y -= modulus;
          Rational& out = cand[i * nf + fi];
          if (d <= bound && abs(y) <= bound) {
            out = Rational(y, d);
            out.canonicalize();
          } else if (rational_reconstruct(x, modulus, bound, out)) {
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), out.get_den_mpz_t());
          } else {
            fail_f = fi;
            fail_i = i;
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;

    // Verification: every nullspace vector read off the candidate annihilates every row.
    std::vector<std::ptrdiff_t> pivot_index(n, -1);
    for (std::size_t i = 0; i < r; ++i) pivot_index[pivots[i]] = static_cast<std::ptrdiff_t>(i);
    std::vector<bool> in_sel(m.rows, false);
    for (std::size_t i : sel) in_sel[i] = true;
    bool sel_fail = false, other_fail = false;
    std::vector<std::ptrdiff_t> free_index(n, -1);
    for (std::size_t fi = 0; fi < nf; ++fi) free_index[free_cols[fi]] = static_cast<std::ptrdiff_t>(fi);
    std::vector<Integer> num(r);
    Integer s;
    for (std::size_t fi = 0; fi < nf && !sel_fail; ++fi) {
      Integer d = 1;
      for (std::size_t i = 0; i < r; ++i)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), cand[i * nf + fi].get_den_mpz_t());
      for (std::size_t i = 0; i < r; ++i) {
        const Rational& c = cand[i * nf + fi];
        mpz_divexact(num[i].get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
        num[i] *= c.get_num();
      }
      const std::size_t fcol = free_cols[fi];
      for (std::size_t row = 0; row < m.rows; ++row) {
        s = 0;
        for (std::uint32_t j : m.nz[row]) {
          if (j == fcol) {
            mpz_addmul(s.get_mpz_t(), d.get_mpz_t(), m.at(row, j).get_mpz_t());
          } else if (pivot_index[j] >= 0) {
            mpz_submul(s.get_mpz_t(), num[static_cast<std::size_t>(pivot_index[j])].get_mpz_t(),
                       m.at(row, j).get_mpz_t());
          }
        }
        if (s != 0) {
          if (in_sel[row]) {
            sel_fail = true;
            break;
          }
          other_fail = true;
        }
      }
    }
    if (sel_fail) {
      if (++verify_failures > 64) throw std::runtime_error("rref: verification keeps failing");
      continue;
    }
    if (other_fail) return Outcome::more_rows;

    result.rank = r;
    result.pivots = pivots;
    result.reduced = RatMatrix(r, n);
    for (std::size_t i = 0; i < r; ++i) {
      result.reduced(i, pivots[i]) = 1;
      for (std::size_t fi = 0; fi < nf; ++fi) result.reduced(i, free_cols[fi]) = cand[i * nf + fi];
    }
    return Outcome::ok;
  }
}

Integer lcm_row_scale(const RatMatrix& m, std::size_t i) {
  Integer l = 1;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  return l;
}

}  // namespace

const std::vector<std::uint32_t>& word_primes(std::size_t n) {
  static std::vector<std::uint32_t> primes;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::uint32_t c = primes.empty() ? 2147483647u : primes.back() - 2;
  while (primes.size() < n) {
    while (!is_prime_u32(c)) c -= 2;
    primes.push_back(c);
    c -= 2;
  }
  return primes;
}

RrefResult rref(const RatMatrix& m) {
  RrefResult result;
  result.reduced = RatMatrix(0, m.cols());
  if (m.rows() == 0 || m.cols() == 0) return result;
  const IntRows ints = scale_rows(m);
  for (std::size_t sp = 0;; ++sp) {
    const auto sel = independent_rows_mod(ints, word_primes(sp + 1)[sp]);
    if (sel.empty()) {
      bool all_zero = true;
      for (const auto& nz : ints.nz) all_zero = all_zero && nz.empty();
      if (all_zero) return result;
      continue;
    }
    if (modular_rref(ints, sel, result) == Outcome::ok) return result;
    if (sp > 32) throw std::runtime_error("rref: unable to select spanning rows");
  }
}

std::vector<RatVector> nullspace_from_rref(const RrefResult& r, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<RatVector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

RankResult exact_rank(const RatMatrix& m) {
  const RrefResult r = rref(m);
  return {r.rank, nullspace_from_rref(r, m.cols())};
}

std::size_t rank_mod_prime(const RatMatrix& m, std::uint32_t p) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const IntRows ints = scale_rows(m);
  return independent_rows_mod(ints, p).size();
}

std::size_t rank_lower_bound(const RatMatrix& m) { return rank_mod_prime(m, word_primes(1)[0]); }

std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.cols();
  const RrefResult r = rref(a.hstack(b));
  if (r.rank < n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (r.pivots[i] != i) return std::nullopt;
  return r.reduced.column_block(n, n + b.cols());
}

std::optional<RatVector> solve_consistent(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_consistent: shape mismatch");
  const std::size_t n = a.cols();
  RatMatrix aug = a.hstack(RatMatrix::from_columns({b}, a.rows()));
  const RrefResult r = rref(aug);
  RatVector x(n);
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] == n) return std::nullopt;
    x[r.pivots[i]] = r.reduced(i, n);
  }
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) { return solve(a, RatMatrix::identity(a.rows())); }

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntRows a = scale_rows(m);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) scale *= lcm_row_scale(m, i);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a.a[i * n + k] != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.a[k * n + j], a.a[piv * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer& x = a.a[i * n + j];
        x *= a.a[k * n + k];
        mpz_submul(x.get_mpz_t(), a.a[i * n + k].get_mpz_t(), a.a[k * n + j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a.a[i * n + k] = 0;
    }
    prev = a.a[k * n + k];
  }
  Rational det(prev * sign, scale);
  det.canonicalize();
  return det;
}

std::size_t bareiss_rank(const RatMatrix& m) {
  IntRows a = scale_rows(m);
  const std::size_t rows = a.rows, cols = a.cols;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a.a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a.a[r * cols + j], a.a[piv * cols + j]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer& x = a.a[i * cols + j];
        x *= a.a[r * cols + c];
        mpz_submul(x.get_mpz_t(), a.a[i * cols + c].get_mpz_t(), a.a[r * cols + j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a.a[i * cols + c] = 0;
    }
    prev = a.a[r * cols + c];
    ++r;
  }
  return r;
}

}  // namespace divdiv
