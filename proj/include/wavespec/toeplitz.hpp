#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "wavespec/matrix.hpp"
#include "wavespec/wavelet.hpp"

namespace wavespec {

/// A symmetric Toeplitz matrix of order `size`, given either by an explicit
/// symbol τ(0..size-1) or by a generating density f on [-π, π] with
/// τ(l) = (1/2π) ∫ f(λ) e^{-ilλ} dλ.
struct ToeplitzSpec {
  std::function<double(double)> generator;
  std::vector<double> symbol;
  std::size_t size = 0;

  static ToeplitzSpec from_symbol(std::vector<double> tau);
  static ToeplitzSpec from_generator(std::function<double(double)> f, std::size_t size);
};

/// τ(0..size-1); from the generator by Gauss–Legendre quadrature on [-π, π].
std::vector<double> toeplitz_symbol(const ToeplitzSpec& spec, std::size_t nodes = 2048);

SymmetricMatrix build_toeplitz(const ToeplitzSpec& spec);

struct GrayBounds {
  double lower = 0.0;  // m_f
  double upper = 0.0;  // M_f
};

/// Grid approximation (at least 4096 points on [-π, π]) of ess inf / ess sup
/// of the generator.
GrayBounds gray_bounds(const ToeplitzSpec& spec, std::size_t grid = 4096);

/// |τ(l)| ≤ τ(0)·c/(1+|l|)^1.5 for every retained lag.
bool wiener_decay_holds(const std::vector<double>& symbol, double c);

/// Covariance matrix of n_aj consecutive octave-j wavelet coefficients of
/// fBm(H) and its symmetric square root.
struct ConditionalCovariance {
  double hurst = 0.0;
  int octave = 0;
  std::size_t size = 0;
  SymmetricMatrix sigma;
  SymmetricMatrix root;
  std::vector<double> eigenvalues;  // of sigma, ascending

  /// Generator of sigma as a Toeplitz matrix: 2π·f_H.
  ToeplitzSpec generator_spec(const WaveletFamily& family) const;
};

/// Throws ErrorKind::Degenerate if Σ_H has an eigenvalue ≤ 1e-12·λ_max.
ConditionalCovariance conditional_covariance(double hurst, int octave, std::size_t size,
                                             const WaveletFamily& family);

}  // namespace wavespec
