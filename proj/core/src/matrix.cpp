#include "divdiv/matrix.hpp"

#include <stdexcept>

namespace divdiv {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols, std::size_t rows) {
  RatMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::column_block(std::size_t begin, std::size_t end) const {
  RatMatrix b(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) b(i, j - begin) = (*this)(i, j);
  return b;
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  RatMatrix b(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(idx[i], j);
  return b;
}

RatMatrix RatMatrix::hstack(const RatMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("hstack row mismatch");
  RatMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& below) const {
  if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0)
    throw std::invalid_argument("vstack column mismatch");
  const std::size_t c = rows_ == 0 ? below.cols_ : cols_;
  RatMatrix m(rows_ + below.rows_, c);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < c; ++j) m(rows_ + i, j) = below(i, j);
  return m;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

std::size_t RatMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& v : data_)
    if (v != 0) ++n;
  return n;
}

RatVector RatMatrix::apply(const RatVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply size mismatch");
  RatVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Rational& a = (*this)(i, j);
      if (a != 0 && x[j] != 0) s += a * x[j];
    }
    y[i] = s;
  }
  return y;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("product shape mismatch");
  // Row-sparse accumulation: skips the zero entries that dominate operator matrices.
  RatMatrix c(a.rows_, b.cols_);
  std::vector<std::vector<std::size_t>> b_nz(b.rows_);
  for (std::size_t k = 0; k < b.rows_; ++k)
    for (std::size_t j = 0; j < b.cols_; ++j)
      if (b(k, j) != 0) b_nz[k].push_back(j);
  Rational t;
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j : b_nz[k]) {
        mpq_mul(t.get_mpq_t(), aik.get_mpq_t(), b(k, j).get_mpq_t());
        c(i, j) += t;
      }
    }
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace divdiv
