#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wavespec/matrix.hpp"
#include "wavespec/synth.hpp"

namespace wavespec {

/// Orthonormal Daubechies filter pair with `order` vanishing moments.
/// Taps are indexed 0..T-1 with T = 2·order; v_k = (-1)^k u_{T-1-k}.
struct WaveletFamily {
  int order = 2;
  std::vector<double> low_pass;
  std::vector<double> high_pass;

  std::size_t support_length() const noexcept { return low_pass.size(); }
  std::string name() const { return "db" + std::to_string(order); }
};

/// Daubechies family of order 2..8.
WaveletFamily daubechies(int order);
/// Accepts "db2".."db8".
WaveletFamily wavelet_family_from_name(const std::string& name);

/// Border-free coefficient count floor(2^-j (n+1-T) - T) (may be <= 0).
long long border_free_count(std::size_t n, std::size_t taps, int octave);

/// Detail coefficients per octave, restricted to coefficients untouched by
/// the series ends.
struct WaveletPyramid {
  std::string family;
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<int> octaves;                 // 1..max_octave
  std::vector<Matrix> details;              // p × n_j per octave
  std::vector<std::size_t> counts;          // n_j
  /// Half-open index window [first, last) of the retained coefficients within
  /// the full valid-convolution output of each octave.
  std::vector<std::pair<std::size_t, std::size_t>> valid_ranges;

  int max_octave() const { return octaves.empty() ? 0 : octaves.back(); }
  const Matrix& at_octave(int j) const;
  std::size_t count_at(int j) const;
};

/// Mallat's pyramid from A(2^0, k) = Y(k). Throws ErrorKind::Validation when
/// an octave up to max_octave would have no border-free coefficient.
WaveletPyramid mallat_pyramid(const PathMatrix& paths, const WaveletFamily& family, int max_octave);

/// α(H)² = H Γ(2H) sin(Hπ) / π.
double fbm_spectral_constant(double hurst);

/// Fourier transform ψ̂(x) = ∫ψ(t)e^{-ixt}dt via the infinite-product form of
/// the cascade.
std::complex<double> psi_hat(const WaveletFamily& family, double x);

/// Number of aliased terms kept on each side in the spectral series.
inline constexpr int kSpectralSeriesTerms = 64;

/// Spectral density of the octave-j wavelet coefficients of fBm(H), periodized
/// to [-π, π].
double wavelet_spectral_density(double hurst, double x, int octave, const WaveletFamily& family);

/// Largest relative contribution, over a grid of x, of aliased terms with
/// 64 < |l| <= 1024 that the truncated series drops.
double spectral_series_tail(double hurst, int octave, const WaveletFamily& family);

/// E[d(2^j, k+κ) d(2^j, k)] = ∫_{-π}^{π} e^{ixκ} f_H(x) dx by Gauss–Legendre
/// quadrature (2048 nodes, checked against 4096). Throws ErrorKind::Numerical
/// when the two rules differ by more than 1e-6 of the lag-0 value.
double wavelet_autocovariance(double hurst, int octave, long long kappa, const WaveletFamily& family);

/// Lags 0..max_lag in one pass (same quadrature as wavelet_autocovariance).
std::vector<double> wavelet_autocovariances(double hurst, int octave, std::size_t max_lag,
                                            const WaveletFamily& family);

}  // namespace wavespec
