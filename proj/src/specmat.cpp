#include "wavespec/specmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wavespec/eigen.hpp"
#include "wavespec/error.hpp"
#include "wavespec/kernels.hpp"

namespace wavespec {

WaveletMatrix wavelet_matrix_from_details(const Matrix& details, int total_octave, std::size_t scale) {
  const std::size_t p = details.rows();
  const std::size_t count = details.cols();
  if (count < p) {
    std::ostringstream os;
    os << "A4: octave " << total_octave << " has " << count << " border-free coefficients, fewer than p=" << p
       << " (need p < n/(a 2^j)); the wavelet matrix would be rank deficient";
    throw Error(ErrorKind::Regime, os.str());
  }
  WaveletMatrix w;
  w.octave = total_octave;
  w.scale = scale;
  w.effective_size = count;
  w.matrix = kernels::scaled_gram_serial(details, 0, count);
  return w;
}

WaveletMatrix wavelet_matrix(const WaveletPyramid& pyramid, int total_octave, std::size_t scale) {
  return wavelet_matrix_from_details(pyramid.at_octave(total_octave), total_octave, scale);
}

double LogSpectrum::cdf(double v) const {
  const auto it = std::upper_bound(values.begin(), values.end(), v);
  return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
}

LogSpectrum log_spectrum_from_eigenvalues(std::vector<double> eigenvalues, std::size_t scale, int octave) {
  if (scale < 2) throw Error(ErrorKind::Validation, "log spectrum needs scale a >= 2 so that log a > 0");
  std::sort(eigenvalues.begin(), eigenvalues.end());
  for (std::size_t l = 0; l < eigenvalues.size(); ++l) {
    if (!(eigenvalues[l] > 0.0)) {
      std::ostringstream os;
      os << "eigenvalue " << (l + 1) << " of the wavelet matrix at octave " << octave << " is " << eigenvalues[l]
         << "; log-spectrum undefined (regime p >= n_aj?)";
      throw Error(ErrorKind::Degenerate, os.str());
    }
  }
  LogSpectrum s;
  s.scale = scale;
  s.octave = octave;
  const double log_a = std::log(static_cast<double>(scale));
  s.values.reserve(eigenvalues.size());
  for (double lam : eigenvalues) s.values.push_back(std::log(lam) / log_a);
  s.eigenvalues = std::move(eigenvalues);
  return s;
}

LogSpectrum log_spectrum(const WaveletMatrix& w) {
  return log_spectrum_from_eigenvalues(eigvalsh(w.matrix), w.scale, w.octave);
}

TargetLaw::TargetLaw(const HurstLaw& law) : masses_(law.masses()) {
  for (double h : law.support()) atoms_.push_back(2.0 * h + 1.0);
}

TargetLaw::TargetLaw(std::vector<double> atoms, std::vector<double> masses)
    : atoms_(std::move(atoms)), masses_(std::move(masses)) {
  if (atoms_.empty() || atoms_.size() != masses_.size())
    throw Error(ErrorKind::Validation, "target law needs matching non-empty atoms and masses");
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (!(atoms_[i] > atoms_[i - 1])) throw Error(ErrorKind::Validation, "target atoms must be strictly increasing");
}

double TargetLaw::cdf(double v) const {
  double c = 0.0;
  for (std::size_t i = 0; i < atoms_.size() && atoms_[i] <= v; ++i) c += masses_[i];
  return std::min(c, 1.0);
}

double target_cdf(const TargetLaw& law, double v) { return law.cdf(v); }

double ks_distance(std::span<const double> values, const TargetLaw& law, double window) {
  if (values.empty()) throw Error(ErrorKind::Validation, "ks_distance needs a non-empty spectrum");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  auto at_or_below = [&](double v) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) / count;
  };
  auto strictly_below = [&](double v) {
    return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) / count;
  };
  auto near_atom = [&](double v) {
    return std::any_of(law.atoms().begin(), law.atoms().end(),
                       [&](double a) { return std::abs(v - a) <= window; });
  };

  double worst = 0.0;
  for (double a : law.atoms()) {
    for (double v : {a - window, a + window}) {
      if (near_atom(v) && window > 0.0 && (std::abs(v - a) < window)) continue;
      worst = std::max(worst, std::abs(at_or_below(v) - law.cdf(v)));
    }
  }
  for (double v : sorted) {
    if (near_atom(v)) continue;
    worst = std::max(worst, std::abs(at_or_below(v) - law.cdf(v)));
    worst = std::max(worst, std::abs(strictly_below(v) - law.cdf(v)));
  }
  return std::clamp(worst, 0.0, 1.0);
}

double ks_distance(const LogSpectrum& spectrum, const TargetLaw& law, double window) {
  return ks_distance(spectrum.values, law, window);
}

std::vector<double> multiscale_hurst(std::span<const OctaveSpectrum> spectra, RegressionWeights weights) {
  if (spectra.size() < 2) throw Error(ErrorKind::Validation, "multiscale regression needs at least two octaves");
  const std::size_t p = spectra.front().eigenvalues.size();
  std::vector<double> w(spectra.size()), x(spectra.size());
  for (std::size_t s = 0; s < spectra.size(); ++s) {
    if (spectra[s].eigenvalues.size() != p)
      throw Error(ErrorKind::Validation, "multiscale regression: octaves have different dimensions");
    x[s] = spectra[s].octave;
    w[s] = weights == RegressionWeights::Equal ? 1.0 : static_cast<double>(spectra[s].effective_size);
  }
  const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
  double xbar = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) xbar += w[s] * x[s];
  xbar /= wsum;
  double sxx = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) sxx += w[s] * (x[s] - xbar) * (x[s] - xbar);
  if (!(sxx > 0.0)) throw Error(ErrorKind::Validation, "multiscale regression is singular (need j2 > j1)");

  std::vector<double> estimates(p);
  for (std::size_t l = 0; l < p; ++l) {
    std::vector<double> y(spectra.size());
    double ybar = 0.0;
    for (std::size_t s = 0; s < spectra.size(); ++s) {
      const double lam = spectra[s].eigenvalues[l];
      if (!(lam > 0.0)) {
        std::ostringstream os;
        os << "eigenvalue " << (l + 1) << " at octave " << spectra[s].octave << " is not positive";
        throw Error(ErrorKind::Degenerate, os.str());
      }
      y[s] = std::log2(lam);
      ybar += w[s] * y[s];
    }
    ybar /= wsum;
    double sxy = 0.0;
    for (std::size_t s = 0; s < spectra.size(); ++s) sxy += w[s] * (x[s] - xbar) * (y[s] - ybar);
    estimates[l] = (sxy / sxx - 1.0) / 2.0;
  }
  std::sort(estimates.begin(), estimates.end());
  return estimates;
}

std::vector<OctaveSpectrum> octave_spectra(const WaveletPyramid& pyramid, int first, int last) {
  if (last <= first) throw Error(ErrorKind::Validation, "octave range needs j2 > j1");
  std::vector<OctaveSpectrum> out;
  for (int j = first; j <= last; ++j) {
    const auto w = wavelet_matrix(pyramid, j, 2);
    out.push_back({j, w.effective_size, eigvalsh(w.matrix)});
  }
  return out;
}

void validate_schedule(std::span<const Regime> schedule, int octave, double sqrt_constant) {
  if (schedule.empty()) throw Error(ErrorKind::Validation, "A4: regime schedule is empty");
  const double two_j = std::ldexp(1.0, octave);
  double previous_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& r = schedule[i];
    const double n = static_cast<double>(r.n), a = static_cast<double>(r.a), p = static_cast<double>(r.p);
    std::ostringstream where;
    where << "regime #" << (i + 1) << " (n=" << r.n << ", a=" << r.a << ", p=" << r.p << ", j=" << octave << ")";
    if (r.p < 1 || r.n < 2) throw Error(ErrorKind::Validation, "A4: " + where.str() + " needs p >= 1 and n >= 2");
    if (r.a < 2 || (r.a & (r.a - 1)) != 0)
      throw Error(ErrorKind::Validation, "A4: " + where.str() + " scale a must be a power of two >= 2");
    if (!(a <= n / two_j)) throw Error(ErrorKind::Validation, "A4: " + where.str() + " violates a <= n/2^j");
    if (!(p < n / (a * two_j))) throw Error(ErrorKind::Validation, "A4: " + where.str() + " violates p < n/(a 2^j)");
    if (!(p <= sqrt_constant * std::sqrt(n / a)))
      throw Error(ErrorKind::Validation, "A4: " + where.str() + " violates p <= c sqrt(n/a)");
    const double ratio = p * a / n;
    if (!(ratio < previous_ratio))
      throw Error(ErrorKind::Validation, "A4: " + where.str() + " does not decrease p a/n along the schedule");
    previous_ratio = ratio;
  }
}

}  // namespace wavespec
