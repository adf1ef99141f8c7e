#include "wavespec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "wavespec/error.hpp"

namespace wavespec {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::Validation, "matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

namespace {
template <class Op>
Matrix elementwise(const Matrix& a, const Matrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::Validation, "matrix shapes differ");
  Matrix c(a.rows(), a.cols());
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), c.data().begin(), op);
  return c;
}
}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) { return elementwise(a, b, std::plus<>{}); }
Matrix operator-(const Matrix& a, const Matrix& b) { return elementwise(a, b, std::minus<>{}); }

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& x : c.data()) x *= s;
  return c;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

SymmetricMatrix SymmetricMatrix::from_dense(const Matrix& full, double tol) {
  if (full.rows() != full.cols())
    throw Error(ErrorKind::Validation, "symmetric matrix must be square");
  const std::size_t n = full.rows();
  double scale = 0.0;
  for (double x : full.data()) scale = std::max(scale, std::abs(x));
  SymmetricMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(full(i, j) - full(j, i)) > tol * std::max(scale, 1.0))
        throw Error(ErrorKind::Validation,
                    "matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      s.at(i, j) = full(i, j);
    }
  }
  return s;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t order) {
  SymmetricMatrix s(order);
  for (std::size_t i = 0; i < order; ++i) s.at(i, i) = 1.0;
  return s;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> d) {
  SymmetricMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.at(i, i) = d[i];
  return s;
}

Matrix SymmetricMatrix::to_dense() const {
  Matrix m(order_, order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::Validation, "symmetric matrix orders differ");
  SymmetricMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) c.at(i, j) = a(i, j) + b(i, j);
  return c;
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::Validation, "symmetric matrix orders differ");
  SymmetricMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) c.at(i, j) = a(i, j) - b(i, j);
  return c;
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
  SymmetricMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) c.at(i, j) = s * a(i, j);
  return c;
}

SymmetricMatrix gram_rows(const Matrix& m) {
  SymmetricMatrix g(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto ri = m.row(i);
    for (std::size_t j = i; j < m.rows(); ++j) {
      auto rj = m.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < m.cols(); ++k) s += ri[k] * rj[k];
      g.at(i, j) = s;
    }
  }
  return g;
}

SymmetricMatrix congruence(const Matrix& a, const SymmetricMatrix& s) {
  if (a.cols() != s.order()) throw Error(ErrorKind::Validation, "congruence: shape mismatch");
  const Matrix as = a * s.to_dense();
  SymmetricMatrix out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += as(i, k) * a(j, k);
      out.at(i, j) = acc;
    }
  }
  return out;
}

}  // namespace wavespec
