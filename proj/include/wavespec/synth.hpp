#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavespec/matrix.hpp"
#include "wavespec/rng.hpp"

namespace wavespec {

/// Discrete law of the Hurst exponent: finitely many support points in (0,1)
/// with positive masses summing to one.
class HurstLaw {
 public:
  HurstLaw(std::vector<double> support, std::vector<double> masses);

  /// Parses "H:mass,H:mass,..."; masses may be decimals or fractions "1/3".
  static HurstLaw parse(const std::string& text);
  static HurstLaw uniform(std::vector<double> support);

  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return support_.size(); }
  /// Smallest support point.
  double varpi() const noexcept { return support_.front(); }
  double max_support() const noexcept { return support_.back(); }

  double sample(RandomStream& rng) const;
  std::string to_string() const;

 private:
  std::vector<double> support_;
  std::vector<double> masses_;
};

/// Hurst exponent per component process.
struct HurstAssignment {
  std::vector<double> values;
};

HurstAssignment draw_assignment(const HurstLaw& law, std::size_t p, RandomStream& rng);

struct MixingSpec {
  enum class Kind { Identity, RandomConditioned };
  Kind kind = Kind::Identity;
  double condition_bound = 2.0;

  static MixingSpec identity() { return {}; }
  static MixingSpec conditioned(double bound);
  /// "identity" or "cond:<bound>".
  static MixingSpec parse(const std::string& text);
  std::string to_string() const;
};

/// p × n measurements; row l is component l at times 1..n.
class PathMatrix {
 public:
  PathMatrix() = default;
  explicit PathMatrix(Matrix data);

  std::size_t p() const noexcept { return data_.rows(); }
  std::size_t n() const noexcept { return data_.cols(); }
  const Matrix& data() const noexcept { return data_; }
  std::span<const double> row(std::size_t l) const { return data_.row(l); }

  friend bool operator==(const PathMatrix&, const PathMatrix&) = default;

 private:
  Matrix data_;
};

/// Autocovariance of unit-variance fractional Gaussian noise at lag k.
double fgn_autocovariance(double hurst, long long k);

/// Exact fGn sampler by circulant embedding of the autocovariance (size 2n
/// circulant). Each FFT yields two independent paths; the second is held back
/// and returned by the next call, so draws depend only on the stream and call
/// order.
class FgnSampler {
 public:
  FgnSampler(double hurst, std::size_t n);
  ~FgnSampler();
  FgnSampler(FgnSampler&&) noexcept;
  FgnSampler& operator=(FgnSampler&&) noexcept;

  double hurst() const noexcept { return hurst_; }
  std::size_t size() const noexcept { return n_; }
  /// Most negative circulant eigenvalue before clamping, relative to the largest.
  double worst_relative_eigenvalue() const noexcept { return worst_relative_; }

  void sample(RandomStream& rng, std::span<double> out);

 private:
  struct Plan;
  double hurst_;
  std::size_t n_;
  double worst_relative_ = 0.0;
  std::vector<double> scaled_sqrt_eigs_;
  std::unique_ptr<Plan> plan_;
  std::vector<double> pending_;
  bool has_pending_ = false;
};

/// Fractional Brownian motion B_H(1..n) as cumulative sums of exact fGn.
std::vector<double> synth_fbm(double hurst, std::size_t n, RandomStream& rng);

/// p × p coordinate matrix per `spec`.
Matrix realize_mixing(const MixingSpec& spec, std::size_t p, RandomStream& rng);

struct EnsembleSpec {
  std::size_t n = 1024;
  std::size_t p = 3;
  HurstLaw law = HurstLaw::uniform({0.2, 0.5, 0.8});
  MixingSpec mixing;
  int family_order = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Ensemble {
  HurstAssignment assignment;
  PathMatrix latent;
  PathMatrix observed;
  Matrix mixing;
};

/// Draws the assignment, the latent fBm rows and the mixing matrix, all from
/// `rng` in that order, and returns Y = P·X.
Ensemble synth_ensemble(const EnsembleSpec& spec, RandomStream& rng);

}  // namespace wavespec
