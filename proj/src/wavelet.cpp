#include "wavespec/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "wavespec/error.hpp"
#include "wavespec/kernels.hpp"
#include "wavespec/quadrature.hpp"

namespace wavespec {

namespace {

// Minimum-phase Daubechies low-pass taps, normalized to Σu = √2.
const std::vector<std::vector<double>>& daubechies_taps() {
  static const std::vector<std::vector<double>> taps = {
      // db2
      {0.482962913144534143375, 0.836516303737807905575, 0.224143868042013381026, -0.129409522551260381174},
      // db3
      {0.332670552950082615999, 0.806891509311092576494, 0.459877502118491570095, -0.135011020010254588696,
       -0.0854412738820266616928, 0.0352262918857095366027},
      // db4
      {0.230377813308896500863, 0.714846570552915647090, 0.630880767929858907882, -0.0279837694168598542114,
       -0.187034811719093084080, 0.0308413818355607636272, 0.0328830116668851997354, -0.0105974017850690321049},
      // db5
      {0.160102397974192914481, 0.603829269797189670540, 0.724308528437772927728, 0.138428145901320731505,
       -0.242294887066382031863, -0.0322448695846383746485, 0.0775714938400457135231, -0.00624149021279827427419,
       -0.0125807519990819994685, 0.00333572528547377127800},
      // db6
      {0.111540743350109463621, 0.494623890398453085677, 0.751133908021095350679, 0.315250351709197629086,
       -0.226264693965439820076, -0.129766867567261935562, 0.0975016055873230491023, 0.0275228655303057286255,
       -0.0315820393174860295651, 0.000553842201161496139252, 0.00477725751094551063964,
       -0.00107730108530847956485},
      // db7
      {0.0778520540850091790200, 0.396539319481917306539, 0.729132090846235119917, 0.469782287405193122472,
       -0.143906003928564975405, -0.224036184993874982638, 0.0713092192668302647509, 0.0806126091510830719129,
       -0.0380299369350144135796, -0.0165745416306668806541, 0.0125509985560998406130,
       0.000429577972921366521132, -0.00180164070404749091527, 0.000353713799974520248446},
      // db8
      {0.0544158422431040099550, 0.312871590914299970659, 0.675630736297289806808, 0.585354683654206712771,
       -0.0158291052563493056674, -0.284015542961546926516, 0.000472484573913282770361, 0.128747426620478458857,
       -0.0173693010018075461696, -0.0440882539307947515068, 0.0139810279173982816487, 0.00874609404740577671638,
       -0.00487035299345157431042, -0.000391740373376947046298, 0.000675449406450569366370,
       -0.000117476784124769533731},
  };
  return taps;
}

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw Error(ErrorKind::Domain, "Hurst exponent " + std::to_string(hurst) + " outside (0,1)");
}

}  // namespace

WaveletFamily daubechies(int order) {
  if (order < 2 || order > 8)
    throw Error(ErrorKind::Validation, "W1: Daubechies order must be in 2..8 (got " + std::to_string(order) + ")");
  WaveletFamily f;
  f.order = order;
  f.low_pass = daubechies_taps()[static_cast<std::size_t>(order - 2)];
  const std::size_t t = f.low_pass.size();
  f.high_pass.resize(t);
  for (std::size_t k = 0; k < t; ++k) f.high_pass[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.low_pass[t - 1 - k];
  return f;
}

WaveletFamily wavelet_family_from_name(const std::string& name) {
  if (name.size() == 3 && name.rfind("db", 0) == 0 && name[2] >= '2' && name[2] <= '8') return daubechies(name[2] - '0');
  throw Error(ErrorKind::Validation, "W1: unknown wavelet family '" + name + "' (expected db2..db8)");
}

long long border_free_count(std::size_t n, std::size_t taps, int octave) {
  const double v = std::ldexp(static_cast<double>(n) + 1.0 - static_cast<double>(taps), -octave) -
                   static_cast<double>(taps);
  return static_cast<long long>(std::floor(v));
}

const Matrix& WaveletPyramid::at_octave(int j) const {
  for (std::size_t i = 0; i < octaves.size(); ++i)
    if (octaves[i] == j) return details[i];
  throw Error(ErrorKind::Validation, "pyramid has no octave " + std::to_string(j));
}

std::size_t WaveletPyramid::count_at(int j) const {
  for (std::size_t i = 0; i < octaves.size(); ++i)
    if (octaves[i] == j) return counts[i];
  throw Error(ErrorKind::Validation, "pyramid has no octave " + std::to_string(j));
}

WaveletPyramid mallat_pyramid(const PathMatrix& paths, const WaveletFamily& family, int max_octave) {
  if (max_octave < 1) throw Error(ErrorKind::Validation, "max_octave must be >= 1");
  const std::size_t taps = family.support_length();
  for (int j = 1; j <= max_octave; ++j) {
    if (border_free_count(paths.n(), taps, j) < 1) {
      std::ostringstream os;
      os << "sample size n=" << paths.n() << " leaves no border-free " << family.name() << " coefficient at octave "
         << j << " (requested max octave " << max_octave << ")";
      throw Error(ErrorKind::Validation, os.str());
    }
  }

  auto full = kernels::mallat_rows_omp(paths.data(), family.low_pass, family.high_pass, max_octave);

  WaveletPyramid pyr;
  pyr.family = family.name();
  pyr.n = paths.n();
  pyr.p = paths.p();
  for (int j = 1; j <= max_octave; ++j) {
    const auto count = static_cast<std::size_t>(border_free_count(paths.n(), taps, j));
    Matrix& all = full[static_cast<std::size_t>(j - 1)];
    if (all.cols() < count) throw Error(ErrorKind::Numerical, "border-free count exceeds valid convolution length");
    Matrix kept(paths.p(), count);
    for (std::size_t r = 0; r < paths.p(); ++r) std::copy_n(all.row(r).begin(), count, kept.row(r).begin());
    pyr.octaves.push_back(j);
    pyr.details.push_back(std::move(kept));
    pyr.counts.push_back(count);
    pyr.valid_ranges.emplace_back(0, count);
  }
  return pyr;
}

// ---------------------------------------------------------------------------
// Second-order oracle

double fbm_spectral_constant(double hurst) {
  check_hurst(hurst);
  return hurst * std::tgamma(2.0 * hurst) * std::sin(hurst * std::numbers::pi) / std::numbers::pi;
}

namespace {

std::complex<double> filter_response(const std::vector<double>& taps, double xi) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < taps.size(); ++k) s += taps[k] * std::polar(1.0, -xi * static_cast<double>(k));
  return s / std::numbers::sqrt2;
}

}  // namespace

std::complex<double> psi_hat(const WaveletFamily& family, double x) {
  // ψ̂(x) = m1(x/2) Π_{k≥2} m0(x/2^k); the product is cut once x/2^k < 1e-13,
  // where φ̂ = 1 + O(x/2^k).
  std::complex<double> value = filter_response(family.high_pass, x / 2.0);
  double xi = x / 4.0;
  for (int depth = 0; depth < 80 && std::abs(xi) > 1e-13; ++depth, xi /= 2.0)
    value *= filter_response(family.low_pass, xi);
  return value;
}

namespace {

double aliased_term(double psi_sq, double y, double exponent) {
  if (y == 0.0) return 0.0;  // |ψ̂(y)|² = O(y^{2N}) kills the pole
  return psi_sq / std::pow(std::abs(y), exponent);
}

// |ψ̂(x_i + 2πl)|² for every Gauss–Legendre node x_i on [-π, π] and |l| ≤ 64.
struct PsiTable {
  std::vector<double> nodes;    // mapped to [-π, π]
  std::vector<double> weights;  // scaled by π
  std::vector<double> psi_sq;   // node-major, 2·64+1 entries per node
};

std::shared_ptr<const PsiTable> psi_table(const WaveletFamily& family, std::size_t order) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::size_t>, std::shared_ptr<const PsiTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({family.order, order}); it != cache.end()) return it->second;
  }
  auto rule = gauss_legendre(order);
  auto table = std::make_shared<PsiTable>();
  const std::size_t terms = 2 * kSpectralSeriesTerms + 1;
  table->nodes.resize(order);
  table->weights.resize(order);
  table->psi_sq.resize(order * terms);
  // |ψ̂| is even, so only the non-negative half of the nodes is evaluated.
  for (std::size_t i = 0; i < order; ++i) {
    table->nodes[i] = std::numbers::pi * rule->nodes[i];
    table->weights[i] = std::numbers::pi * rule->weights[i];
  }
  for (std::size_t i = order / 2; i < order; ++i) {
    for (int l = -kSpectralSeriesTerms; l <= kSpectralSeriesTerms; ++l) {
      const double y = table->nodes[i] + 2.0 * std::numbers::pi * l;
      const double v = std::norm(psi_hat(family, y));
      table->psi_sq[i * terms + static_cast<std::size_t>(l + kSpectralSeriesTerms)] = v;
      table->psi_sq[(order - 1 - i) * terms + static_cast<std::size_t>(-l + kSpectralSeriesTerms)] = v;
    }
  }
  std::lock_guard lock(mutex);
  auto& slot = cache[{family.order, order}];
  if (!slot) slot = std::move(table);
  return slot;
}

std::vector<double> density_at_nodes(const PsiTable& table, double hurst, int octave) {
  const double exponent = 1.0 + 2.0 * hurst;
  const double prefactor = std::pow(std::ldexp(1.0, octave), exponent) * fbm_spectral_constant(hurst);
  const std::size_t terms = 2 * kSpectralSeriesTerms + 1;
  std::vector<double> f(table.nodes.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double s = 0.0;
    for (int l = -kSpectralSeriesTerms; l <= kSpectralSeriesTerms; ++l) {
      const double y = table.nodes[i] + 2.0 * std::numbers::pi * l;
      s += aliased_term(table.psi_sq[i * terms + static_cast<std::size_t>(l + kSpectralSeriesTerms)], y, exponent);
    }
    f[i] = prefactor * s;
  }
  return f;
}

std::vector<double> cosine_moments(const PsiTable& table, const std::vector<double>& f, std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      s += table.weights[i] * std::cos(table.nodes[i] * static_cast<double>(lag)) * f[i];
    out[lag] = s;
  }
  return out;
}

constexpr std::size_t kPrimaryNodes = 2048;
constexpr std::size_t kCheckNodes = 4096;

}  // namespace

double wavelet_spectral_density(double hurst, double x, int octave, const WaveletFamily& family) {
  check_hurst(hurst);
  if (!(std::abs(x) <= std::numbers::pi))
    throw Error(ErrorKind::Validation, "spectral density frequency must lie in [-pi, pi]");
  const double exponent = 1.0 + 2.0 * hurst;
  double s = 0.0;
  for (int l = -kSpectralSeriesTerms; l <= kSpectralSeriesTerms; ++l) {
    const double y = x + 2.0 * std::numbers::pi * l;
    s += aliased_term(std::norm(psi_hat(family, y)), y, exponent);
  }
  const double value = std::pow(std::ldexp(1.0, octave), exponent) * fbm_spectral_constant(hurst) * s;
  if (!std::isfinite(value)) throw Error(ErrorKind::Numerical, "spectral density evaluation is not finite");
  return value;
}

double spectral_series_tail(double hurst, int octave, const WaveletFamily& family) {
  check_hurst(hurst);
  const double exponent = 1.0 + 2.0 * hurst;
  double worst = 0.0;
  for (int g = 0; g <= 16; ++g) {
    const double x = std::numbers::pi * g / 16.0;
    double tail = 0.0;
    for (int l = kSpectralSeriesTerms + 1; l <= 1024; ++l) {
      for (int sign : {-1, 1}) {
        const double y = x + 2.0 * std::numbers::pi * sign * l;
        tail += aliased_term(std::norm(psi_hat(family, y)), y, exponent);
      }
    }
    const double scale = std::pow(std::ldexp(1.0, octave), exponent) * fbm_spectral_constant(hurst);
    worst = std::max(worst, scale * tail / wavelet_spectral_density(hurst, x, octave, family));
  }
  return worst;
}

std::vector<double> wavelet_autocovariances(double hurst, int octave, std::size_t max_lag,
                                            const WaveletFamily& family) {
  check_hurst(hurst);
  const auto primary = psi_table(family, kPrimaryNodes);
  const auto check = psi_table(family, kCheckNodes);
  const auto coarse = cosine_moments(*primary, density_at_nodes(*primary, hurst, octave), max_lag);
  const auto fine = cosine_moments(*check, density_at_nodes(*check, hurst, octave), max_lag);
  const double tolerance = 1e-6 * std::abs(fine[0]);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    if (!std::isfinite(coarse[lag]) || std::abs(coarse[lag] - fine[lag]) > tolerance) {
      std::ostringstream os;
      os << "wavelet autocovariance quadrature did not converge at lag " << lag << " (H=" << hurst
         << ", octave " << octave << ", " << kPrimaryNodes << " vs " << kCheckNodes
         << " nodes differ by " << std::abs(coarse[lag] - fine[lag]) << ")";
      throw Error(ErrorKind::Numerical, os.str());
    }
  }
  return coarse;
}

double wavelet_autocovariance(double hurst, int octave, long long kappa, const WaveletFamily& family) {
  const auto lag = static_cast<std::size_t>(kappa < 0 ? -kappa : kappa);
  return wavelet_autocovariances(hurst, octave, lag, family)[lag];
}

}  // namespace wavespec
