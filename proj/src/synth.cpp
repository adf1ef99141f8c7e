#include "wavespec/synth.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "wavespec/eigen.hpp"
#include "wavespec/error.hpp"

namespace wavespec {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double parse_mass(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t used = 0;
  try {
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double a = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const double b = std::stod(den, &used);
    if (used != den.size()) throw std::invalid_argument(text);
    return a / b;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Validation, "A1: cannot parse Hurst-law mass '" + text + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// HurstLaw

HurstLaw::HurstLaw(std::vector<double> support, std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
  if (support_.empty()) throw Error(ErrorKind::Validation, "A1: Hurst law needs at least one support point");
  if (support_.size() != masses_.size())
    throw Error(ErrorKind::Validation, "A1: Hurst law support and masses differ in length");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const double h = support_[i];
    if (!(h > 0.0 && h < 1.0))
      throw Error(ErrorKind::Validation, "A1: Hurst support point " + std::to_string(h) + " not in (0,1)");
    if (i > 0 && !(h > support_[i - 1]))
      throw Error(ErrorKind::Validation, "A1: Hurst support must be strictly increasing without duplicates");
    if (!(masses_[i] > 0.0))
      throw Error(ErrorKind::Validation, "A1: Hurst law masses must be strictly positive");
  }
  const double total = std::accumulate(masses_.begin(), masses_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorKind::Validation, "A1: Hurst law masses sum to " + std::to_string(total) + ", not 1");
}

HurstLaw HurstLaw::parse(const std::string& text) {
  std::vector<std::pair<double, double>> atoms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorKind::Validation, "A1: Hurst-law entry '" + item + "' must be H:mass");
    double h = 0.0;
    try {
      std::size_t used = 0;
      const std::string hs = trim(item.substr(0, colon));
      h = std::stod(hs, &used);
      if (used != hs.size()) throw std::invalid_argument(hs);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Validation, "A1: cannot parse Hurst value in '" + item + "'");
    }
    atoms.emplace_back(h, parse_mass(trim(item.substr(colon + 1))));
  }
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> support, masses;
  for (auto [h, m] : atoms) {
    support.push_back(h);
    masses.push_back(m);
  }
  // Fractions such as 1/3 do not sum to exactly 1 in binary; renormalize small slack.
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::abs(total - 1.0) <= 1e-9)
    for (double& m : masses) m /= total;
  return HurstLaw(std::move(support), std::move(masses));
}

HurstLaw HurstLaw::uniform(std::vector<double> support) {
  std::vector<double> masses(support.size(), 1.0 / static_cast<double>(support.size()));
  return HurstLaw(std::move(support), std::move(masses));
}

double HurstLaw::sample(RandomStream& rng) const {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    cumulative += masses_[i];
    if (u < cumulative) return support_[i];
  }
  return support_.back();
}

std::string HurstLaw::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (i) os << ',';
    os << support_[i] << ':' << masses_[i];
  }
  return os.str();
}

HurstAssignment draw_assignment(const HurstLaw& law, std::size_t p, RandomStream& rng) {
  HurstAssignment a;
  a.values.reserve(p);
  for (std::size_t l = 0; l < p; ++l) a.values.push_back(law.sample(rng));
  return a;
}

// ---------------------------------------------------------------------------
// MixingSpec

MixingSpec MixingSpec::conditioned(double bound) {
  if (!(bound >= 1.0) || !std::isfinite(bound))
    throw Error(ErrorKind::Validation, "A5: mixing condition bound must be finite and >= 1");
  return {Kind::RandomConditioned, bound};
}

MixingSpec MixingSpec::parse(const std::string& text) {
  if (text == "identity") return identity();
  if (text.rfind("cond:", 0) == 0) {
    try {
      return conditioned(std::stod(text.substr(5)));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorKind::Validation, "A3/A5: mixing must be 'identity' or 'cond:<bound>', got '" + text + "'");
}

std::string MixingSpec::to_string() const {
  if (kind == Kind::Identity) return "identity";
  std::ostringstream os;
  os.precision(17);
  os << "cond:" << condition_bound;
  return os.str();
}

PathMatrix::PathMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1) throw Error(ErrorKind::Validation, "path matrix needs p >= 1");
  if (data_.cols() < 2) throw Error(ErrorKind::Validation, "path matrix needs n >= 2");
  for (double x : data_.data())
    if (!std::isfinite(x)) throw Error(ErrorKind::Validation, "path matrix has non-finite entries");
}

// ---------------------------------------------------------------------------
// Fractional Gaussian noise

double fgn_autocovariance(double hurst, long long k) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw Error(ErrorKind::Domain, "Hurst exponent " + std::to_string(hurst) + " outside (0,1)");
  const double a = std::abs(static_cast<double>(k));
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(a + 1.0, e) - 2.0 * std::pow(a, e) + std::pow(std::abs(a - 1.0), e));
}

struct FgnSampler::Plan {
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;

  explicit Plan(std::size_t m) {
    in = fftw_alloc_complex(m);
    out = fftw_alloc_complex(m);
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~Plan() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

FgnSampler::FgnSampler(double hurst, std::size_t n) : hurst_(hurst), n_(n) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw Error(ErrorKind::Domain, "Hurst exponent " + std::to_string(hurst) + " outside (0,1)");
  if (n < 2) throw Error(ErrorKind::Validation, "fGn sample size must be >= 2");
  const std::size_t m = 2 * n;
  plan_ = std::make_unique<Plan>(m);

  // First row of the circulant embedding.
  for (std::size_t k = 0; k < m; ++k) {
    const long long lag = k <= n ? static_cast<long long>(k) : static_cast<long long>(m - k);
    plan_->in[k][0] = fgn_autocovariance(hurst, lag);
    plan_->in[k][1] = 0.0;
  }
  fftw_execute(plan_->plan);

  double lambda_max = 0.0;
  double lambda_min = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    lambda_max = std::max(lambda_max, plan_->out[k][0]);
    lambda_min = std::min(lambda_min, plan_->out[k][0]);
  }
  worst_relative_ = lambda_min / lambda_max;
  if (lambda_min < -1e-8 * lambda_max) {
    std::ostringstream os;
    os << "circulant embedding for H=" << hurst << ", n=" << n << " has eigenvalue " << lambda_min
       << " (max " << lambda_max << ")";
    throw Error(ErrorKind::Synthesis, os.str());
  }
  scaled_sqrt_eigs_.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    scaled_sqrt_eigs_[k] = std::sqrt(std::max(plan_->out[k][0], 0.0) / static_cast<double>(m));
  pending_.resize(n);
}

FgnSampler::~FgnSampler() = default;
FgnSampler::FgnSampler(FgnSampler&&) noexcept = default;
FgnSampler& FgnSampler::operator=(FgnSampler&&) noexcept = default;

void FgnSampler::sample(RandomStream& rng, std::span<double> out) {
  if (out.size() != n_) throw Error(ErrorKind::Validation, "fGn output buffer has wrong length");
  if (has_pending_) {
    std::copy(pending_.begin(), pending_.end(), out.begin());
    has_pending_ = false;
    return;
  }
  const std::size_t m = 2 * n_;
  for (std::size_t k = 0; k < m; ++k) {
    plan_->in[k][0] = scaled_sqrt_eigs_[k] * rng.normal();
    plan_->in[k][1] = scaled_sqrt_eigs_[k] * rng.normal();
  }
  fftw_execute(plan_->plan);
  for (std::size_t t = 0; t < n_; ++t) {
    out[t] = plan_->out[t][0];
    pending_[t] = plan_->out[t][1];
  }
  has_pending_ = true;
}

std::vector<double> synth_fbm(double hurst, std::size_t n, RandomStream& rng) {
  FgnSampler sampler(hurst, n);
  std::vector<double> path(n);
  sampler.sample(rng, path);
  std::partial_sum(path.begin(), path.end(), path.begin());
  return path;
}

// ---------------------------------------------------------------------------
// Mixing

namespace {

// Orthogonal factor of a Gaussian matrix (modified Gram–Schmidt with the sign
// convention R_ii > 0, which makes Q Haar distributed).
Matrix random_orthogonal(std::size_t p, RandomStream& rng) {
  Matrix g(p, p);
  for (double& x : g.data()) x = rng.normal();
  // Orthonormalize columns.
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      double dot = 0.0;
      for (std::size_t r = 0; r < p; ++r) dot += g(r, c) * g(r, prev);
      for (std::size_t r = 0; r < p; ++r) g(r, c) -= dot * g(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < p; ++r) norm += g(r, c) * g(r, c);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < p; ++r) g(r, c) /= norm;
  }
  return g;
}

}  // namespace

Matrix realize_mixing(const MixingSpec& spec, std::size_t p, RandomStream& rng) {
  if (p < 1) throw Error(ErrorKind::Validation, "mixing dimension must be >= 1");
  if (spec.kind == MixingSpec::Kind::Identity) return Matrix::identity(p);

  const double b = spec.condition_bound;
  const Matrix q = random_orthogonal(p, rng);
  const Matrix q2 = random_orthogonal(p, rng);
  Matrix d(p, p);
  for (std::size_t i = 0; i < p; ++i) d(i, i) = 1.0 / b + (b - 1.0 / b) * rng.uniform();
  Matrix mixing = q * d * q2.transposed();

  const auto sv = singular_values(mixing);
  const double slack = 1e-12 * b;
  if (sv.front() < 1.0 / b - slack || sv.back() > b + slack)
    throw Error(ErrorKind::Numerical, "A5: realized mixing matrix has singular values outside bound");
  return mixing;
}

// ---------------------------------------------------------------------------
// Ensembles

void EnsembleSpec::validate() const {
  if (n < 2) throw Error(ErrorKind::Validation, "A2: sample size n must be >= 2");
  if (p < 1) throw Error(ErrorKind::Validation, "A2: dimension p must be >= 1");
  if (family_order < 2 || family_order > 8)
    throw Error(ErrorKind::Validation, "W1: Daubechies order must be in 2..8");
}

Ensemble synth_ensemble(const EnsembleSpec& spec, RandomStream& rng) {
  spec.validate();
  Ensemble e;
  e.assignment = draw_assignment(spec.law, spec.p, rng);

  std::map<double, FgnSampler> samplers;
  Matrix latent(spec.p, spec.n);
  for (std::size_t l = 0; l < spec.p; ++l) {
    const double h = e.assignment.values[l];
    auto it = samplers.find(h);
    if (it == samplers.end()) it = samplers.emplace(h, FgnSampler(h, spec.n)).first;
    auto row = latent.row(l);
    it->second.sample(rng, row);
    std::partial_sum(row.begin(), row.end(), row.begin());
  }

  e.mixing = realize_mixing(spec.mixing, spec.p, rng);
  Matrix observed = spec.mixing.kind == MixingSpec::Kind::Identity ? latent : e.mixing * latent;
  e.latent = PathMatrix(std::move(latent));
  e.observed = PathMatrix(std::move(observed));
  return e;
}

}  // namespace wavespec
