#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavespec/specmat.hpp"
#include "wavespec/synth.hpp"

namespace wavespec {

struct ExperimentConfig {
  HurstLaw law = HurstLaw::uniform({0.2, 0.5, 0.8});
  std::vector<Regime> schedule;
  std::size_t replicates = 200;
  /// Per-regime replicate counts; empty means `replicates` everywhere.
  std::vector<std::size_t> replicates_per_regime;
  int family_order = 2;
  /// Fixed octave j of the scale a·2^j.
  int octave = 0;
  /// Regression octaves [j1, j2]; default [3, log2(a) + j] per regime.
  std::optional<std::pair<int, int>> octave_range;
  MixingSpec mixing;
  std::uint64_t seed = 0;
  /// c in p ≤ c·sqrt(n/a).
  double sqrt_constant = 1.0;
  double ks_window = kDefaultKsWindow;
  std::size_t bootstrap_resamples = 1000;

  std::size_t replicates_for(std::size_t regime) const;
  std::pair<int, int> octave_range_for(const Regime& r) const;
  /// Schedule (A4), law and counts. Throws ErrorKind::Validation.
  void validate() const;
};

/// Fixed-width histogram on [lo, lo + width·bins). Masses are fractions of the
/// in-range samples; out-of-range samples are only tallied.
struct Histogram {
  double lo = 0.0;
  double width = 0.02;
  std::vector<double> masses;
  std::size_t samples = 0;
  std::size_t below = 0;
  std::size_t above = 0;

  double center(std::size_t bin) const { return lo + width * (static_cast<double>(bin) + 0.5); }
  std::size_t bins() const { return masses.size(); }
};

Histogram make_histogram(const std::vector<double>& samples, double lo, double hi, double width);

struct Mode {
  double location = 0.0;
  double mass = 0.0;
  double prominence = 0.0;
};

struct ModeReport {
  std::vector<Mode> modes;  // ascending by location
  std::size_t requested = 0;
  std::size_t local_maxima = 0;
  bool complete() const { return modes.size() == requested; }
};

inline constexpr int kModeSmoothingBins = 5;
inline constexpr double kModeMassHalfWidth = 0.15;

/// Peaks of the 5-bin moving average, top-k by prominence. A flat-topped
/// peak is located at the centre of its plateau.
ModeReport mode_extract(const Histogram& h, std::size_t k);

struct ReplicateRecord {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  std::vector<double> hurst_assignment;
  std::vector<double> eigenvalues;    // W(a·2^j), ascending
  std::vector<double> rescaled_log;   // ln λ / ln a
  std::vector<double> hurst_estimates;
  double ks = 0.0;           // rescaled-log spectrum vs F_{2H+1}
  double ks_debiased = 0.0;  // 2Ĥ+1 from the multiscale regression vs F_{2H+1}
};

struct Quartiles {
  double q25 = 0.0, median = 0.0, q75 = 0.0;
};

Quartiles quartiles(std::vector<double> v);

struct ConfigSummary {
  Regime regime;
  int octave = 0;  // log2(a) + j
  std::pair<int, int> octave_range;
  std::size_t replicates = 0;
  std::size_t failed = 0;
  Histogram hurst_histogram;
  Histogram log_histogram;
  Quartiles ks;
  Quartiles ks_debiased;
  ModeReport modes;
  std::vector<ReplicateRecord> records;  // ordered by replicate index
  double wall_seconds = 0.0;             // not part of the deterministic summary

  std::vector<double> ks_values() const;
  std::vector<double> ks_debiased_values() const;
  std::vector<double> pooled_hurst() const;
};

struct TrendReport {
  std::vector<double> medians;
  std::vector<std::pair<double, double>> bands;  // 95% bootstrap interval of the median
  bool strictly_decreasing = false;
  bool non_increasing = false;
  bool flat = false;
};

/// Median KS per config with bootstrap bands over replicates.
TrendReport convergence_trend(const std::vector<std::vector<double>>& ks_by_config, std::size_t resamples,
                              std::uint64_t seed);

struct RunSummary {
  ExperimentConfig config;
  std::vector<ConfigSummary> configs;
  TrendReport trend;
  TrendReport trend_debiased;
  bool failed = false;  // some config lost more than 5% of its replicates
  double wall_seconds = 0.0;
};

inline constexpr double kMaxFailedFraction = 0.05;

/// One replicate of one regime; errors from any module are caught and stored.
ReplicateRecord run_replicate(const ExperimentConfig& config, std::size_t regime_index, std::size_t replicate);

/// Replicates run concurrently on `threads` workers (0: OpenMP default).
/// Aggregates are reduced in replicate order and do not depend on `threads`.
RunSummary run_experiment(const ExperimentConfig& config, int threads = 0);

}  // namespace wavespec
