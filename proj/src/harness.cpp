#include "wavespec/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#include "wavespec/eigen.hpp"
#include "wavespec/error.hpp"
#include "wavespec/wavelet.hpp"

namespace wavespec {

namespace {

int log2_exact(std::size_t a) { return std::countr_zero(a); }

double percentile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) return std::nan("");
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

}  // namespace

std::size_t ExperimentConfig::replicates_for(std::size_t regime) const {
  if (regime < replicates_per_regime.size() && replicates_per_regime[regime] > 0) return replicates_per_regime[regime];
  return replicates;
}

std::pair<int, int> ExperimentConfig::octave_range_for(const Regime& r) const {
  if (octave_range) return *octave_range;
  return {3, log2_exact(r.a) + octave};
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw Error(ErrorKind::Validation, "replicates must be >= 1");
  if (!replicates_per_regime.empty() && replicates_per_regime.size() != schedule.size())
    throw Error(ErrorKind::Validation, "replicates_per_regime must have one entry per regime");
  if (octave < 0) throw Error(ErrorKind::Validation, "octave j must be >= 0");
  if (!(ks_window >= 0.0)) throw Error(ErrorKind::Validation, "ks_window must be >= 0");
  if (bootstrap_resamples < 1) throw Error(ErrorKind::Validation, "bootstrap_resamples must be >= 1");
  daubechies(family_order);
  if (mixing.kind == MixingSpec::Kind::RandomConditioned && !(mixing.condition_bound >= 1.0))
    throw Error(ErrorKind::Validation, "A5: mixing condition bound must be >= 1");
  validate_schedule(schedule, octave, sqrt_constant);
  for (const auto& r : schedule) {
    const auto [j1, j2] = octave_range_for(r);
    if (j1 < 1 || j2 <= j1) {
      std::ostringstream os;
      os << "octave range [" << j1 << ", " << j2 << "] for n=" << r.n << ", a=" << r.a
         << " needs 1 <= j1 < j2";
      throw Error(ErrorKind::Validation, os.str());
    }
    const auto taps = daubechies(family_order).support_length();
    const int top = std::max(j2, log2_exact(r.a) + octave);
    for (int j = std::min(j1, log2_exact(r.a) + octave); j <= top; ++j) {
      if (border_free_count(r.n, taps, j) < static_cast<long long>(r.p)) {
        std::ostringstream os;
        os << "A4: octave " << j << " keeps " << border_free_count(r.n, taps, j)
           << " border-free coefficients for n=" << r.n << ", fewer than p=" << r.p;
        throw Error(ErrorKind::Validation, os.str());
      }
    }
  }
}

Histogram make_histogram(const std::vector<double>& samples, double lo, double hi, double width) {
  Histogram h;
  h.lo = lo;
  h.width = width;
  const auto bins = static_cast<std::size_t>(std::llround((hi - lo) / width));
  std::vector<std::size_t> counts(bins, 0);
  std::size_t inside = 0;
  for (double v : samples) {
    const double pos = (v - lo) / width;
    if (!(pos >= 0.0)) {
      ++h.below;
    } else if (pos >= static_cast<double>(bins)) {
      ++h.above;
    } else {
      ++counts[static_cast<std::size_t>(pos)];
      ++inside;
    }
  }
  h.samples = samples.size();
  h.masses.resize(bins, 0.0);
  if (inside > 0)
    for (std::size_t b = 0; b < bins; ++b)
      h.masses[b] = static_cast<double>(counts[b]) / static_cast<double>(inside);
  return h;
}

ModeReport mode_extract(const Histogram& h, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::Validation, "mode_extract needs k >= 1");
  ModeReport report;
  report.requested = k;
  const std::size_t m = h.bins();
  if (m == 0) return report;

  std::vector<double> s(m);
  const int half = kModeSmoothingBins / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    int used = 0;
    for (int d = -half; d <= half; ++d) {
      const auto q = static_cast<long long>(i) + d;
      if (q < 0 || q >= static_cast<long long>(m)) continue;
      sum += h.masses[static_cast<std::size_t>(q)];
      ++used;
    }
    s[i] = sum / used;
  }

  // Plateau-aware peaks: a maximal run of equal values bounded by lower
  // neighbours (or the ends).
  std::vector<Mode> peaks;
  for (std::size_t i = 0; i < m;) {
    std::size_t e = i;
    while (e + 1 < m && s[e + 1] == s[i]) ++e;
    const bool left_lower = i == 0 || s[i - 1] < s[i];
    const bool right_lower = e + 1 == m || s[e + 1] < s[i];
    if (left_lower && right_lower && s[i] > 0.0) {
      // Prominence as in the topographic definition: walk each way until a
      // higher bin or the end, base = the larger of the two minima.
      double left_min = s[i];
      for (std::size_t l = i; l > 0 && s[l - 1] <= s[i];) left_min = std::min(left_min, s[--l]);
      double right_min = s[i];
      for (std::size_t r = e; r + 1 < m && s[r + 1] <= s[i];) right_min = std::min(right_min, s[++r]);
      const double base = std::max(left_min, right_min);
      Mode mode;
      mode.location = 0.5 * (h.center(i) + h.center(e));
      mode.prominence = s[i] - base;
      peaks.push_back(mode);
    }
    i = e + 1;
  }
  report.local_maxima = peaks.size();
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Mode& a, const Mode& b) { return a.prominence > b.prominence; });
  if (peaks.size() > k) peaks.resize(k);
  std::sort(peaks.begin(), peaks.end(), [](const Mode& a, const Mode& b) { return a.location < b.location; });
  const double eps = 1e-9 * h.width;
  for (auto& p : peaks) {
    for (std::size_t b = 0; b < m; ++b)
      if (std::abs(h.center(b) - p.location) <= kModeMassHalfWidth + eps) p.mass += h.masses[b];
  }
  report.modes = std::move(peaks);
  return report;
}

Quartiles quartiles(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return {percentile_sorted(v, 0.25), percentile_sorted(v, 0.5), percentile_sorted(v, 0.75)};
}

std::vector<double> ConfigSummary::ks_values() const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.ok) out.push_back(r.ks);
  return out;
}

std::vector<double> ConfigSummary::ks_debiased_values() const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.ok) out.push_back(r.ks_debiased);
  return out;
}

std::vector<double> ConfigSummary::pooled_hurst() const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.ok) out.insert(out.end(), r.hurst_estimates.begin(), r.hurst_estimates.end());
  return out;
}

TrendReport convergence_trend(const std::vector<std::vector<double>>& ks_by_config, std::size_t resamples,
                              std::uint64_t seed) {
  if (ks_by_config.size() < 2) throw Error(ErrorKind::Validation, "convergence trend needs at least two configs");
  TrendReport t;
  for (std::size_t c = 0; c < ks_by_config.size(); ++c) {
    const auto& ks = ks_by_config[c];
    if (ks.empty()) throw Error(ErrorKind::Validation, "convergence trend: a config has no KS values");
    t.medians.push_back(quartiles(ks).median);
    RandomStream rng = RandomStream::derive(seed ^ 0x5bd1e995ULL, c);
    std::vector<double> medians(resamples), draw(ks.size());
    for (std::size_t b = 0; b < resamples; ++b) {
      for (auto& d : draw) d = ks[static_cast<std::size_t>(rng.uniform() * static_cast<double>(ks.size()))];
      std::sort(draw.begin(), draw.end());
      medians[b] = percentile_sorted(draw, 0.5);
    }
    std::sort(medians.begin(), medians.end());
    t.bands.emplace_back(percentile_sorted(medians, 0.025), percentile_sorted(medians, 0.975));
  }
  t.strictly_decreasing = t.non_increasing = t.flat = true;
  for (std::size_t c = 1; c < t.medians.size(); ++c) {
    if (!(t.medians[c] < t.medians[c - 1])) t.strictly_decreasing = false;
    if (!(t.medians[c] <= t.medians[c - 1])) t.non_increasing = false;
    if (t.medians[c] != t.medians[c - 1]) t.flat = false;
  }
  return t;
}

ReplicateRecord run_replicate(const ExperimentConfig& config, std::size_t regime_index, std::size_t replicate) {
  ReplicateRecord rec;
  rec.index = replicate;
  const Regime& regime = config.schedule.at(regime_index);
  try {
    RandomStream rng = RandomStream::derive(config.seed, replicate).child(regime_index);
    EnsembleSpec spec;
    spec.n = regime.n;
    spec.p = regime.p;
    spec.law = config.law;
    spec.mixing = config.mixing;
    spec.family_order = config.family_order;
    spec.seed = config.seed;
    const Ensemble ens = synth_ensemble(spec, rng);
    rec.hurst_assignment = ens.assignment.values;

    const auto family = daubechies(config.family_order);
    const int total = log2_exact(regime.a) + config.octave;
    const auto [j1, j2] = config.octave_range_for(regime);
    const auto pyramid = mallat_pyramid(ens.observed, family, std::max(total, j2));

    const auto spectrum = log_spectrum(wavelet_matrix(pyramid, total, regime.a));
    rec.eigenvalues = spectrum.eigenvalues;
    rec.rescaled_log = spectrum.values;
    rec.ks = ks_distance(spectrum, TargetLaw(config.law), config.ks_window);

    const auto spectra = octave_spectra(pyramid, j1, j2);
    rec.hurst_estimates = multiscale_hurst(spectra, RegressionWeights::EffectiveSize);
    std::vector<double> affine(rec.hurst_estimates.size());
    for (std::size_t l = 0; l < affine.size(); ++l) affine[l] = 2.0 * rec.hurst_estimates[l] + 1.0;
    rec.ks_debiased = ks_distance(affine, TargetLaw(config.law), config.ks_window);
    rec.ok = true;
  } catch (const Error& e) {
    rec.error = std::string(to_string(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

RunSummary run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  using clock = std::chrono::steady_clock;
  const auto run_start = clock::now();
  RunSummary summary;
  summary.config = config;
  const int workers = threads > 0 ? threads : omp_get_max_threads();

  for (std::size_t c = 0; c < config.schedule.size(); ++c) {
    const auto start = clock::now();
    ConfigSummary cs;
    cs.regime = config.schedule[c];
    cs.octave = log2_exact(cs.regime.a) + config.octave;
    cs.octave_range = config.octave_range_for(cs.regime);
    cs.replicates = config.replicates_for(c);
    cs.records.resize(cs.replicates);
    const auto count = static_cast<long long>(cs.replicates);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long long r = 0; r < count; ++r)
      cs.records[static_cast<std::size_t>(r)] = run_replicate(config, c, static_cast<std::size_t>(r));

    std::vector<double> logs;
    for (const auto& rec : cs.records) {
      if (!rec.ok) {
        ++cs.failed;
        continue;
      }
      logs.insert(logs.end(), rec.rescaled_log.begin(), rec.rescaled_log.end());
    }
    cs.hurst_histogram = make_histogram(cs.pooled_hurst(), 0.0, 1.0, 0.02);
    cs.log_histogram = make_histogram(logs, 0.0, 4.0, 0.05);
    const auto ks = cs.ks_values();
    if (!ks.empty()) {
      cs.ks = quartiles(ks);
      cs.ks_debiased = quartiles(cs.ks_debiased_values());
    }
    cs.modes = mode_extract(cs.hurst_histogram, config.law.size());
    if (static_cast<double>(cs.failed) > kMaxFailedFraction * static_cast<double>(cs.replicates))
      summary.failed = true;
    cs.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    summary.configs.push_back(std::move(cs));
  }

  if (summary.configs.size() >= 2) {
    std::vector<std::vector<double>> ks, ks_debiased;
    bool all_have_values = true;
    for (const auto& cs : summary.configs) {
      ks.push_back(cs.ks_values());
      ks_debiased.push_back(cs.ks_debiased_values());
      all_have_values = all_have_values && !ks.back().empty();
    }
    if (all_have_values) {
      summary.trend = convergence_trend(ks, config.bootstrap_resamples, config.seed);
      summary.trend_debiased = convergence_trend(ks_debiased, config.bootstrap_resamples, config.seed + 1);
    }
  }
  summary.wall_seconds = std::chrono::duration<double>(clock::now() - run_start).count();
  return summary;
}

}  // namespace wavespec
