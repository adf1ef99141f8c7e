#include "wavespec/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wavespec/eigen.hpp"
#include "wavespec/error.hpp"
#include "wavespec/quadrature.hpp"

namespace wavespec {

ToeplitzSpec ToeplitzSpec::from_symbol(std::vector<double> tau) {
  if (tau.empty()) throw Error(ErrorKind::Validation, "Toeplitz symbol must be non-empty");
  ToeplitzSpec s;
  s.size = tau.size();
  s.symbol = std::move(tau);
  return s;
}

ToeplitzSpec ToeplitzSpec::from_generator(std::function<double(double)> f, std::size_t size) {
  if (size == 0) throw Error(ErrorKind::Validation, "Toeplitz size must be >= 1");
  ToeplitzSpec s;
  s.generator = std::move(f);
  s.size = size;
  return s;
}

std::vector<double> toeplitz_symbol(const ToeplitzSpec& spec, std::size_t nodes) {
  if (!spec.symbol.empty()) return spec.symbol;
  if (!spec.generator) throw Error(ErrorKind::Validation, "Toeplitz spec has neither symbol nor generator");
  const auto rule = gauss_legendre(nodes);
  std::vector<double> x(nodes), fx(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    x[i] = std::numbers::pi * rule->nodes[i];
    fx[i] = spec.generator(x[i]);
    if (!std::isfinite(fx[i])) throw Error(ErrorKind::Numerical, "Toeplitz generator returned a non-finite value");
  }
  // Symmetric case: the imaginary part of the Fourier coefficient vanishes.
  std::vector<double> tau(spec.size);
  for (std::size_t l = 0; l < spec.size; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) s += rule->weights[i] * fx[i] * std::cos(static_cast<double>(l) * x[i]);
    tau[l] = std::numbers::pi * s / (2.0 * std::numbers::pi);
  }
  return tau;
}

SymmetricMatrix build_toeplitz(const ToeplitzSpec& spec) {
  const auto tau = toeplitz_symbol(spec);
  const std::size_t m = spec.size;
  if (tau.size() < m) throw Error(ErrorKind::Validation, "Toeplitz symbol shorter than matrix order");
  SymmetricMatrix t(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) t.at(i, j) = tau[j - i];
  return t;
}

GrayBounds gray_bounds(const ToeplitzSpec& spec, std::size_t grid) {
  if (!spec.generator) throw Error(ErrorKind::Validation, "gray_bounds needs a generator");
  grid = std::max<std::size_t>(grid, 4096);
  GrayBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i <= grid; ++i) {
    const double x = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid);
    const double v = spec.generator(x);
    b.lower = std::min(b.lower, v);
    b.upper = std::max(b.upper, v);
  }
  return b;
}

bool wiener_decay_holds(const std::vector<double>& symbol, double c) {
  if (symbol.empty()) return true;
  for (std::size_t l = 0; l < symbol.size(); ++l)
    if (std::abs(symbol[l]) > std::abs(symbol[0]) * c / std::pow(1.0 + static_cast<double>(l), 1.5)) return false;
  return true;
}

ToeplitzSpec ConditionalCovariance::generator_spec(const WaveletFamily& family) const {
  const double h = hurst;
  const int j = octave;
  return ToeplitzSpec::from_generator(
      [h, j, family](double x) { return 2.0 * std::numbers::pi * wavelet_spectral_density(h, x, j, family); }, size);
}

ConditionalCovariance conditional_covariance(double hurst, int octave, std::size_t size,
                                             const WaveletFamily& family) {
  if (size < 1) throw Error(ErrorKind::Validation, "conditional covariance size must be >= 1");
  ConditionalCovariance cc;
  cc.hurst = hurst;
  cc.octave = octave;
  cc.size = size;
  cc.sigma = build_toeplitz(ToeplitzSpec::from_symbol(wavelet_autocovariances(hurst, octave, size - 1, family)));

  const auto dec = eigh(cc.sigma);
  cc.eigenvalues = dec.eigenvalues;
  const double top = dec.eigenvalues.back();
  for (std::size_t k = 0; k < size; ++k) {
    if (!(dec.eigenvalues[k] > 1e-12 * top)) {
      std::ostringstream os;
      os << "conditional covariance (H=" << hurst << ", octave " << octave << ", size " << size
         << ") is not full rank: eigenvalue " << k << " = " << dec.eigenvalues[k];
      throw Error(ErrorKind::Degenerate, os.str());
    }
  }
  cc.root = SymmetricMatrix(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < size; ++k)
        s += dec.eigenvectors(i, k) * std::sqrt(dec.eigenvalues[k]) * dec.eigenvectors(j, k);
      cc.root.at(i, j) = s;
    }
  return cc;
}

}  // namespace wavespec
