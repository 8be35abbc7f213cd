#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "fastpinv/errors.hpp"

namespace fastpinv {

// Dense real matrix, row-major, contiguous. Entries are always finite.
//
// Zero-extent matrices (e.g. the n x 0 factor of a rank-0 Gram matrix) are
// allowed so that degenerate factorizations compose without special cases.
class Matrix {
 public:
  Matrix() = default;

  // rows x cols of zeros.
  Matrix(std::size_t rows, std::size_t cols);

  // Takes ownership of row-major `values`; throws ShapeError on a length
  // mismatch and NonFiniteError on NaN/Inf.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  // Matrix::from_rows({{1, 2}, {3, 4}})
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  // "rows x cols", used in error messages.
  std::string shape_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

enum class GramSide {
  left,   // G'G, cols x cols
  right,  // GG', rows x rows
};

Matrix identity(std::size_t n);
Matrix zeros(std::size_t rows, std::size_t cols);

Matrix matmul(const Matrix& a, const Matrix& b);
// a' b and a b' without forming the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

// Gram product computed on one triangle and mirrored, so the result is
// bit-exactly symmetric.
Matrix gram(const Matrix& g, GramSide side);

// Inverse of a symmetric positive definite matrix via unpivoted Cholesky.
// Throws DefinitenessError on a non-positive pivot. The result is exactly
// symmetric.
Matrix spd_inverse(const Matrix& a);

Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);

// Column j as a cols x 1 matrix.
Matrix column(const Matrix& a, std::size_t j);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
double one_norm(const Matrix& a);  // max column absolute sum
double inf_norm(const Matrix& a);  // max row absolute sum

bool is_symmetric(const Matrix& a);

double dot(std::span<const double> x, std::span<const double> y);

// Throws NonFiniteError naming `where` if any entry is NaN/Inf.
void require_finite(const Matrix& a, const char* where);

}  // namespace fastpinv
