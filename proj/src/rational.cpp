#include "mprates/rational.hpp"

#include <sstream>
#include <utility>

#include "mprates/constants.hpp"

namespace mprates {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_integers(std::size_t rows, std::size_t cols,
                                             const std::vector<long long>& values,
                                             long long denominator) {
  if (values.size() != rows * cols) {
    throw InvalidArgument("rational matrix initializer has the wrong size");
  }
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    m.data_[i] = Rational(values[i], denominator);
  }
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("rational matrix shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
  RationalMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidArgument("only square matrices can be inverted");
  const std::size_t n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw NumericalError("rational matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a(row, col) == 0) continue;
      const Rational f = a(row, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(row, j) -= f * a(col, j);
        inv(row, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < cols_; ++j) {
      os << (j == 0 ? "[" : ", ") << (*this)(i, j);
    }
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  return os.str();
}

}  // namespace mprates
