#pragma once

#include "divdiv/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace divdiv {

/// Reduced row echelon form of a rational matrix.
struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row, ascending
  RatMatrix reduced;                ///< rank x cols; identity on the pivot columns
};

/// Exact RREF. Computed modulo word-size primes, lifted by Chinese remaindering
/// and rational reconstruction, then certified over Q: the rank is bounded below
/// by a nonsingular pivot block modulo a prime and above by the nullspace
/// vectors read off the candidate, each re-checked against every row exactly.
RrefResult rref(const RatMatrix& m);

/// Rank with an exact, verified nullspace basis (empty when with_nullspace is false
/// only if the caller does not need it; the certificate is computed regardless).
struct RankResult {
  std::size_t rank = 0;
  std::vector<RatVector> nullspace;
};
RankResult exact_rank(const RatMatrix& m);

/// Nullspace basis read off an RREF: one vector per free column.
std::vector<RatVector> nullspace_from_rref(const RrefResult& r, std::size_t cols);

/// Rank modulo a prime p < 2^31. Always a lower bound for the rank over Q.
std::size_t rank_mod_prime(const RatMatrix& m, std::uint32_t p);
/// Rank modulo the default prime; a certified lower bound.
std::size_t rank_lower_bound(const RatMatrix& m);

/// Unique solution X of A X = B for square nonsingular A; nullopt if A is singular.
std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b);
/// Some solution of A x = b, or nullopt if the system is inconsistent.
std::optional<RatVector> solve_consistent(const RatMatrix& a, const RatVector& b);
std::optional<RatMatrix> inverse(const RatMatrix& a);

/// Determinant by fraction-free (Bareiss) elimination.
Rational determinant(const RatMatrix& m);
/// Rank by fraction-free (Bareiss) elimination. Independent of the modular path.
std::size_t bareiss_rank(const RatMatrix& m);

/// The first n primes below 2^31, descending.
const std::vector<std::uint32_t>& word_primes(std::size_t n);

}  // namespace divdiv
