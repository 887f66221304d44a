#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

namespace mprates {

using Rational = boost::multiprecision::cpp_rational;

/// Dense matrix of arbitrary-precision rationals. Only what the isomer
/// algebra needs: products, exact inversion, comparison.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix identity(std::size_t n);
  /// Row-major integer initializer, scaled by 1/denominator.
  static RationalMatrix from_integers(std::size_t rows, std::size_t cols,
                                      const std::vector<long long>& values,
                                      long long denominator = 1);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator*(const Rational& s) const;
  bool operator==(const RationalMatrix& rhs) const;

  bool is_symmetric() const;
  /// Exact Gauss-Jordan inverse. Throws NumericalError when singular.
  RationalMatrix inverse() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace mprates
