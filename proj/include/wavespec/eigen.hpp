#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wavespec/matrix.hpp"

namespace wavespec {

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  /// V·diag(λ)·Vᵀ.
  Matrix reconstruct() const;
};

/// Symmetric eigensolver: Householder reduction to tridiagonal form, then
/// implicit QL iteration with Wilkinson-style shifts. Throws
/// ErrorKind::Numerical if an eigenvalue fails to converge within 50 sweeps.
EigenDecomposition eigh(const SymmetricMatrix& a);
/// Eigenvalues only (skips eigenvector accumulation).
std::vector<double> eigvalsh(const SymmetricMatrix& a);

/// Singular values of a p × q matrix in ascending order, via the smaller Gram matrix.
std::vector<double> singular_values(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);
double operator_norm(const SymmetricMatrix& a);

/// Coefficients c_0..c_m of det(λI − M), monic (c_m = 1), by Faddeev–LeVerrier.
std::vector<double> characteristic_polynomial(const Matrix& m);

/// Symmetric PSD square root via eigendecomposition; negative eigenvalues
/// above -floor are treated as zero.
SymmetricMatrix psd_sqrt(const SymmetricMatrix& a, double floor = 0.0);

/// Minimal slacks of the eigenvalue inequalities for a symmetric pair. Each
/// slack is (right side − left side) of a "≤" relation, or the negated
/// absolute difference for an identity, so a non-negative value means the
/// relation holds.
struct WeylReport {
  double sum_lower = 0.0;        // λ_l(A)+λ_1(B) ≤ λ_l(A+B)
  double sum_upper = 0.0;        // λ_l(A+B) ≤ λ_l(A)+λ_m(B)
  double perturbation = 0.0;     // max_l |λ_l(A)−λ_l(B)| ≤ ‖A−B‖_op
  /// tr((AB)^k) = tr((BA)^k) for k = 1..m, after scaling A·B by 1/(‖A‖_F‖B‖_F);
  /// equivalent to det(λI−AB) = det(λI−BA).
  double cyclic_traces = 0.0;
  /// For PSD pairs: λ(A^½BA^½) = λ(B^½AB^½), the symmetric forms of AB and BA.
  /// Zero when a matrix is not PSD.
  double cyclic_spectrum = 0.0;
  bool psd_pair = false;

  double min_slack() const;
};

WeylReport check_weyl(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// Slacks of the singular-value forms for general square matrices:
/// σ_l(A+B) ≤ σ_l(A)+σ_p(B) and σ_l(A)σ_1(B) ≤ σ_l(AB) ≤ σ_l(A)σ_p(B).
struct SingularWeylReport {
  double sum_upper = 0.0;
  double product_lower = 0.0;
  double product_upper = 0.0;

  double min_slack() const;
};

SingularWeylReport check_singular_weyl(const Matrix& a, const Matrix& b);

/// Largest |λ_l(MMᵀ) − λ_{q+l−p}(MᵀM)| over l for a p × q matrix with p ≤ q
/// (roles swapped otherwise), scaled by max(1, λ_max).
double transpose_trick_defect(const Matrix& m);

}  // namespace wavespec
