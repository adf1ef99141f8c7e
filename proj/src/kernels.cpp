#include "wavespec/kernels.hpp"

#include <algorithm>

#include "wavespec/error.hpp"

namespace wavespec::kernels {

std::size_t mallat_step(std::span<const double> in, std::span<const double> low, std::span<const double> high,
                        std::vector<double>& approx, std::vector<double>& detail) {
  const std::size_t taps = low.size();
  const std::size_t len = in.size() >= taps ? (in.size() - taps) / 2 + 1 : 0;
  approx.assign(len, 0.0);
  detail.assign(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    const double* x = in.data() + 2 * k;
    double a = 0.0, d = 0.0;
    for (std::size_t i = 0; i < taps; ++i) {
      a += low[i] * x[i];
      d += high[i] * x[i];
    }
    approx[k] = a;
    detail[k] = d;
  }
  return len;
}

void mallat_row(std::span<const double> series, std::span<const double> low, std::span<const double> high,
                int max_octave, std::vector<std::vector<double>>& details) {
  details.resize(static_cast<std::size_t>(max_octave));
  std::vector<double> current(series.begin(), series.end());
  std::vector<double> next;
  for (int j = 1; j <= max_octave; ++j) {
    mallat_step(current, low, high, next, details[static_cast<std::size_t>(j - 1)]);
    current.swap(next);
  }
}

namespace {

std::vector<std::size_t> level_lengths(std::size_t n, std::size_t taps, int max_octave) {
  std::vector<std::size_t> lens;
  std::size_t len = n;
  for (int j = 1; j <= max_octave; ++j) {
    len = len >= taps ? (len - taps) / 2 + 1 : 0;
    lens.push_back(len);
  }
  return lens;
}

std::vector<Matrix> allocate(const Matrix& paths, std::size_t taps, int max_octave) {
  std::vector<Matrix> out;
  for (std::size_t len : level_lengths(paths.cols(), taps, max_octave)) out.emplace_back(paths.rows(), len);
  return out;
}

void transform_row(const Matrix& paths, std::size_t r, std::span<const double> low, std::span<const double> high,
                   int max_octave, std::vector<Matrix>& out) {
  std::vector<std::vector<double>> details;
  mallat_row(paths.row(r), low, high, max_octave, details);
  for (std::size_t j = 0; j < details.size(); ++j) {
    auto dst = out[j].row(r);
    std::copy(details[j].begin(), details[j].end(), dst.begin());
  }
}

void check_taps(std::span<const double> low, std::span<const double> high) {
  if (low.size() != high.size() || low.empty())
    throw Error(ErrorKind::Validation, "filter pair must have equal, non-zero length");
}

}  // namespace

std::vector<Matrix> mallat_rows_serial(const Matrix& paths, std::span<const double> low,
                                       std::span<const double> high, int max_octave) {
  check_taps(low, high);
  auto out = allocate(paths, low.size(), max_octave);
  for (std::size_t r = 0; r < paths.rows(); ++r) transform_row(paths, r, low, high, max_octave, out);
  return out;
}

std::vector<Matrix> mallat_rows_omp(const Matrix& paths, std::span<const double> low,
                                    std::span<const double> high, int max_octave) {
  check_taps(low, high);
  auto out = allocate(paths, low.size(), max_octave);
  const long long rows = static_cast<long long>(paths.rows());
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < rows; ++r)
    transform_row(paths, static_cast<std::size_t>(r), low, high, max_octave, out);
  return out;
}

namespace {

void gram_row(const Matrix& d, std::size_t first, std::size_t count, std::size_t i, SymmetricMatrix& g) {
  const double* ri = d.row(i).data() + first;
  for (std::size_t j = i; j < d.rows(); ++j) {
    const double* rj = d.row(j).data() + first;
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += ri[k] * rj[k];
    g.at(i, j) = s / static_cast<double>(count);
  }
}

void check_window(const Matrix& d, std::size_t first, std::size_t count) {
  if (count == 0 || first + count > d.cols())
    throw Error(ErrorKind::Validation, "gram window outside the coefficient matrix");
}

}  // namespace

SymmetricMatrix scaled_gram_serial(const Matrix& d, std::size_t first, std::size_t count) {
  check_window(d, first, count);
  SymmetricMatrix g(d.rows());
  for (std::size_t i = 0; i < d.rows(); ++i) gram_row(d, first, count, i, g);
  return g;
}

SymmetricMatrix scaled_gram_omp(const Matrix& d, std::size_t first, std::size_t count) {
  check_window(d, first, count);
  SymmetricMatrix g(d.rows());
  const long long rows = static_cast<long long>(d.rows());
  // Packed upper triangle: each row writes a disjoint slice.
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < rows; ++i) gram_row(d, first, count, static_cast<std::size_t>(i), g);
  return g;
}

}  // namespace wavespec::kernels
