#pragma once

#include "divdiv/rational.hpp"

#include <cstddef>
#include <vector>

namespace divdiv {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  /// Rows given as vectors of equal length.
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);
  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector column(std::size_t j) const;
  RatMatrix transpose() const;
  /// Columns [begin, end).
  RatMatrix column_block(std::size_t begin, std::size_t end) const;
  RatMatrix select_rows(const std::vector<std::size_t>& idx) const;
  RatMatrix hstack(const RatMatrix& right) const;
  RatMatrix vstack(const RatMatrix& below) const;

  bool is_zero() const;
  std::size_t nonzeros() const;
  RatVector apply(const RatVector& x) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace divdiv
