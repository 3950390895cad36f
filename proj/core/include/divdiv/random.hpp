#pragma once

#include "divdiv/tensor_field.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace divdiv {

/// Fixed-seed source of small rationals. Numerators lie in [-bound, bound] and
/// denominators in [1, bound], which keeps coefficient growth modest.
class RationalRng {
 public:
  explicit RationalRng(std::uint64_t seed, int bound = 5) : gen_(seed), bound_(bound) {}

  Rational next();
  Rational next_nonzero();
  int uniform_int(int lo, int hi);
  Vec3 vec3();
  /// Random polynomial of total degree at most deg; about density of the monomials are used.
  Polynomial polynomial(int deg, double density = 0.6);
  /// Random field of the given shape whose entries have total degree at most deg;
  /// matrix fields are post-processed to match the symmetry tag.
  TensorField field(Shape shape, int deg, SymmetryTag tag = SymmetryTag::general);
  /// Positively oriented tetrahedron with small rational coordinates.
  std::array<Vec3, 4> tetrahedron();

 private:
  std::mt19937_64 gen_;
  int bound_;
};

}  // namespace divdiv
