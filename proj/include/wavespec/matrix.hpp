#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace wavespec {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

double frobenius_norm(const Matrix& a);

/// Symmetric matrix with packed upper-triangular storage; each off-diagonal
/// pair is stored once, so symmetry cannot be broken.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order) : order_(order), packed_(order * (order + 1) / 2, 0.0) {}

  /// Takes the upper triangle of `full`; throws if `full` is not square or
  /// not symmetric to within `tol` (relative to its largest entry).
  static SymmetricMatrix from_dense(const Matrix& full, double tol = 1e-12);
  static SymmetricMatrix identity(std::size_t order);
  static SymmetricMatrix diagonal(std::span<const double> d);

  std::size_t order() const noexcept { return order_; }

  double operator()(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
  double& at(std::size_t i, std::size_t j) { return packed_[index(i, j)]; }

  Matrix to_dense() const;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    // row-major upper triangle
    return i * order_ - i * (i + 1) / 2 + j;
  }

  std::size_t order_ = 0;
  std::vector<double> packed_;
};

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator*(double s, const SymmetricMatrix& a);

/// M·Mᵀ, always symmetric by construction.
SymmetricMatrix gram_rows(const Matrix& m);
/// A·S·Aᵀ for symmetric S.
SymmetricMatrix congruence(const Matrix& a, const SymmetricMatrix& s);

}  // namespace wavespec
