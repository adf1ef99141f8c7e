#include "wavespec/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavespec/error.hpp"

namespace wavespec {

namespace {

constexpr int kMaxSweeps = 50;

// Householder reduction of the symmetric matrix held in `v` (full storage) to
// tridiagonal form. On exit d holds the diagonal, e the subdiagonal in
// e[1..n-1], and v the accumulated orthogonal transformation.
void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e), rotating the columns of v when
// `vectors` is set. Eigenvalues are sorted ascending with their vectors.
void ql_iterate(Matrix& v, std::vector<double>& d, std::vector<double>& e, bool vectors) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweeps) {
          std::ostringstream os;
          os << "symmetric eigensolver did not converge for eigenvalue " << l << " of " << n
             << " after " << kMaxSweeps << " sweeps (diagonal scale " << tst1 << ")";
          throw Error(ErrorKind::Numerical, os.str());
        }
        // Shift from the leading 2×2 block.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              h = v(k, i + 1);
              v(k, i + 1) = s * v(k, i) + c * h;
              v(k, i) = c * v(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  // Selection sort keeps eigenvector columns paired.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    for (std::size_t j = i + 1; j < n; ++j)
      if (d[j] < d[k]) k = j;
    if (k != i) {
      std::swap(d[k], d[i]);
      if (vectors)
        for (std::size_t j = 0; j < n; ++j) std::swap(v(j, i), v(j, k));
    }
  }
}

void require_finite(const SymmetricMatrix& a) {
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j)
      if (!std::isfinite(a(i, j))) throw Error(ErrorKind::Validation, "eigh: matrix has non-finite entries");
}

EigenDecomposition solve(const SymmetricMatrix& a, bool vectors) {
  require_finite(a);
  const std::size_t n = a.order();
  EigenDecomposition out;
  if (n == 0) return out;
  Matrix v = a.to_dense();
  std::vector<double> d(n), e(n);
  tridiagonalize(v, d, e);
  ql_iterate(v, d, e, vectors);
  out.eigenvalues = std::move(d);
  if (vectors) out.eigenvectors = std::move(v);
  return out;
}

}  // namespace

Matrix EigenDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eigenvectors(i, k) * eigenvalues[k] * eigenvectors(j, k);
      out(i, j) = s;
    }
  return out;
}

EigenDecomposition eigh(const SymmetricMatrix& a) { return solve(a, true); }

std::vector<double> eigvalsh(const SymmetricMatrix& a) { return solve(a, false).eigenvalues; }

std::vector<double> singular_values(const Matrix& m) {
  if (m.rows() < 1 || m.cols() < 1) throw Error(ErrorKind::Validation, "singular_values: empty matrix");
  const SymmetricMatrix gram = m.rows() <= m.cols() ? gram_rows(m) : gram_rows(m.transposed());
  auto ev = eigvalsh(gram);
  for (double& x : ev) x = std::sqrt(std::max(x, 0.0));
  return ev;
}

double operator_norm(const Matrix& m) { return singular_values(m).back(); }

double operator_norm(const SymmetricMatrix& a) {
  const auto ev = eigvalsh(a);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

std::vector<double> characteristic_polynomial(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::Validation, "characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Matrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const Matrix amk = a * mk;
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

SymmetricMatrix psd_sqrt(const SymmetricMatrix& a, double floor) {
  const auto dec = eigh(a);
  const std::size_t n = a.order();
  SymmetricMatrix root(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = dec.eigenvalues[k];
    if (lam < -floor) throw Error(ErrorKind::Degenerate, "psd_sqrt: matrix has a negative eigenvalue");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += dec.eigenvectors(i, k) * std::sqrt(std::max(dec.eigenvalues[k], 0.0)) * dec.eigenvectors(j, k);
      root.at(i, j) = s;
    }
  return root;
}

double WeylReport::min_slack() const {
  return std::min({sum_lower, sum_upper, perturbation, cyclic_traces, cyclic_spectrum});
}

WeylReport check_weyl(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::Validation, "check_weyl: orders differ");
  const std::size_t m = a.order();
  const auto la = eigvalsh(a);
  const auto lb = eigvalsh(b);
  const auto lsum = eigvalsh(a + b);

  WeylReport r;
  r.sum_lower = r.sum_upper = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    r.sum_lower = std::min(r.sum_lower, lsum[l] - (la[l] + lb.front()));
    r.sum_upper = std::min(r.sum_upper, (la[l] + lb.back()) - lsum[l]);
    max_gap = std::max(max_gap, std::abs(la[l] - lb[l]));
  }
  r.perturbation = operator_norm(a - b) - max_gap;

  // Equal power traces for k = 1..m are equivalent to equal characteristic
  // polynomials (Newton's identities) and, unlike the coefficients, are
  // computed stably.
  const Matrix da = a.to_dense();
  const Matrix db = b.to_dense();
  const Matrix ab = da * db, ba = db * da;
  const double unit = std::max(frobenius_norm(da) * frobenius_norm(db), 1e-300);
  Matrix pab = (1.0 / unit) * ab, pba = (1.0 / unit) * ba;
  const Matrix sab = pab, sba = pba;
  double defect = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double tab = 0.0, tba = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      tab += pab(i, i);
      tba += pba(i, i);
    }
    defect = std::max(defect, std::abs(tab - tba));
    if (k < m) {
      pab = pab * sab;
      pba = pba * sba;
    }
  }
  r.cyclic_traces = -defect;

  r.psd_pair = la.front() >= 0.0 && lb.front() >= 0.0;
  if (r.psd_pair) {
    const SymmetricMatrix ra = psd_sqrt(a);
    const SymmetricMatrix rb = psd_sqrt(b);
    const auto lab = eigvalsh(congruence(ra.to_dense(), b));
    const auto lba = eigvalsh(congruence(rb.to_dense(), a));
    double gap = 0.0, top = 1.0;
    for (std::size_t l = 0; l < m; ++l) {
      gap = std::max(gap, std::abs(lab[l] - lba[l]));
      top = std::max(top, std::abs(lab[l]));
    }
    r.cyclic_spectrum = -gap / top;
  }
  return r;
}

double SingularWeylReport::min_slack() const { return std::min({sum_upper, product_lower, product_upper}); }

SingularWeylReport check_singular_weyl(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorKind::Validation, "check_singular_weyl: need square matrices of equal order");
  const std::size_t p = a.rows();
  const auto sa = singular_values(a);
  const auto sb = singular_values(b);
  const auto ssum = singular_values(a + b);
  const auto sprod = singular_values(a * b);
  SingularWeylReport r;
  r.sum_upper = r.product_lower = r.product_upper = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < p; ++l) {
    r.sum_upper = std::min(r.sum_upper, sa[l] + sb.back() - ssum[l]);
    r.product_lower = std::min(r.product_lower, sprod[l] - sa[l] * sb.front());
    r.product_upper = std::min(r.product_upper, sa[l] * sb.back() - sprod[l]);
  }
  return r;
}

double transpose_trick_defect(const Matrix& m) {
  const Matrix& wide = m;
  const Matrix tall = m.transposed();
  const auto small = m.rows() <= m.cols() ? eigvalsh(gram_rows(wide)) : eigvalsh(gram_rows(tall));
  const auto big = m.rows() <= m.cols() ? eigvalsh(gram_rows(tall)) : eigvalsh(gram_rows(wide));
  const std::size_t p = small.size();
  const std::size_t q = big.size();
  double defect = 0.0, scale = 1.0;
  for (std::size_t l = 0; l < p; ++l) {
    defect = std::max(defect, std::abs(small[l] - big[q - p + l]));
    scale = std::max(scale, std::abs(small[l]));
  }
  return defect / scale;
}

}  // namespace wavespec
