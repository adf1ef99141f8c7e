#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wavespec/matrix.hpp"
#include "wavespec/synth.hpp"
#include "wavespec/wavelet.hpp"

namespace wavespec {

/// W̃(2^j0) = (1/n_j0) Σ_k D̃(2^j0,k) D̃(2^j0,k)ᵀ over the border-free shifts,
/// where 2^j0 = a·2^j.
struct WaveletMatrix {
  int octave = 0;         // j0, the total octave
  std::size_t scale = 1;  // a
  std::size_t effective_size = 0;
  SymmetricMatrix matrix;
};

/// Throws ErrorKind::Regime if the octave has fewer than p coefficients.
WaveletMatrix wavelet_matrix(const WaveletPyramid& pyramid, int total_octave, std::size_t scale);
/// Same, from a raw p × m coefficient matrix (all columns used).
WaveletMatrix wavelet_matrix_from_details(const Matrix& details, int total_octave, std::size_t scale);

/// Rescaled log-eigenvalues ln λ_l / ln a, ascending.
struct LogSpectrum {
  std::vector<double> eigenvalues;  // λ_l ascending
  std::vector<double> values;       // ln λ_l / ln a
  std::size_t scale = 0;
  int octave = 0;

  /// Empirical CDF at v (fraction of values ≤ v).
  double cdf(double v) const;
};

/// Throws ErrorKind::Validation for a < 2 and ErrorKind::Degenerate when an
/// eigenvalue is not strictly positive.
LogSpectrum log_spectrum(const WaveletMatrix& w);
/// From eigenvalues directly (sorted internally).
LogSpectrum log_spectrum_from_eigenvalues(std::vector<double> eigenvalues, std::size_t scale, int octave);

/// Law of 2H+1 for H distributed by a HurstLaw.
class TargetLaw {
 public:
  explicit TargetLaw(const HurstLaw& law);
  TargetLaw(std::vector<double> atoms, std::vector<double> masses);

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  /// Right-continuous step CDF.
  double cdf(double v) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> masses_;
};

double target_cdf(const TargetLaw& law, double v);

/// Default window half-width for ks_distance.
inline constexpr double kDefaultKsWindow = 0.1;

/// sup |F_emp − F_target| over the evaluation grid made of atom ± window and
/// every spectrum value lying outside all atom windows. Values within
/// `window` of an atom count as sitting on it.
double ks_distance(std::span<const double> values, const TargetLaw& law, double window = kDefaultKsWindow);
double ks_distance(const LogSpectrum& spectrum, const TargetLaw& law, double window = kDefaultKsWindow);

/// Eigenvalues at one octave with the number of coefficients behind them.
struct OctaveSpectrum {
  int octave = 0;
  std::size_t effective_size = 0;
  std::vector<double> eigenvalues;  // ascending
};

enum class RegressionWeights { Equal, EffectiveSize };

/// Per-rank weighted least squares of log2 λ_l(2^j) on j over the given
/// octaves; returns Ĥ_l = (slope_l − 1)/2, ascending.
std::vector<double> multiscale_hurst(std::span<const OctaveSpectrum> spectra,
                                     RegressionWeights weights = RegressionWeights::EffectiveSize);

/// Eigenvalues of W̃(2^j) for j in [first, last] from one pyramid.
std::vector<OctaveSpectrum> octave_spectra(const WaveletPyramid& pyramid, int first, int last);

/// One (n, a, p) regime of the three-way limit.
struct Regime {
  std::size_t n = 0;
  std::size_t a = 0;
  std::size_t p = 0;
};

/// Checks each regime (a ≤ n/2^j, p < n/(a 2^j), p ≤ c·sqrt(n/a), a power of
/// two ≥ 2) and that p·a/n decreases along the schedule. Throws
/// ErrorKind::Validation naming the violated A4 inequality.
void validate_schedule(std::span<const Regime> schedule, int octave, double sqrt_constant);

}  // namespace wavespec
