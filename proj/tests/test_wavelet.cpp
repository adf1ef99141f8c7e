#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wavespec/error.hpp"
#include "wavespec/wavelet.hpp"

using namespace wavespec;

namespace {

PathMatrix random_paths(std::size_t p, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  Matrix m(p, n);
  for (double& v : m.data()) v = rng.normal();
  return PathMatrix(std::move(m));
}

// d_j[k] written out as nested sums over the filter taps, octave by octave,
// without the library's two-buffer recursion.
std::vector<double> direct_details(const std::vector<double>& x, const WaveletFamily& f, int octave) {
  std::vector<double> approx = x;
  std::vector<double> detail;
  const std::size_t taps = f.low_pass.size();
  for (int j = 1; j <= octave; ++j) {
    std::vector<double> next, d;
    for (std::size_t k = 0; 2 * k + taps <= approx.size(); ++k) {
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < taps; ++i) {
        a += f.low_pass[i] * approx[2 * k + i];
        b += f.high_pass[i] * approx[2 * k + i];
      }
      next.push_back(a);
      d.push_back(b);
    }
    approx = next;
    detail = d;
  }
  return detail;
}

}  // namespace

TEST_SUITE("wavelet") {

TEST_CASE("Daubechies filters are orthonormal with N vanishing moments") {
  for (int order = 2; order <= 8; ++order) {
    CAPTURE(order);
    const auto f = daubechies(order);
    const std::size_t t = f.support_length();
    REQUIRE(t == static_cast<std::size_t>(2 * order));
    CHECK(f.name() == "db" + std::to_string(order));
    double sum = 0.0;
    for (double u : f.low_pass) sum += u;
    CHECK(sum == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
    for (std::size_t shift = 0; 2 * shift < t; ++shift) {
      double dot = 0.0;
      for (std::size_t k = 0; k + 2 * shift < t; ++k) dot += f.low_pass[k] * f.low_pass[k + 2 * shift];
      CHECK(dot == doctest::Approx(shift == 0 ? 1.0 : 0.0).scale(1.0).epsilon(1e-14));
    }
    for (std::size_t k = 0; k < t; ++k)
      CHECK(f.high_pass[k] == ((k % 2) ? -1.0 : 1.0) * f.low_pass[t - 1 - k]);
    for (int m = 0; m < order; ++m) {
      double moment = 0.0, scale = 0.0;
      for (std::size_t k = 0; k < t; ++k) {
        moment += std::pow(static_cast<double>(k), m) * f.high_pass[k];
        scale += std::pow(static_cast<double>(k), m) * std::abs(f.high_pass[k]);
      }
      CHECK(std::abs(moment) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("db2 taps match the closed form") {
  const double s3 = std::sqrt(3.0), d = 4.0 * std::numbers::sqrt2;
  const std::vector<double> expect = {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
  const auto f = daubechies(2);
  for (std::size_t k = 0; k < 4; ++k) CHECK(f.low_pass[k] == doctest::Approx(expect[k]).epsilon(1e-15));
}

TEST_CASE("unsupported families name W1") {
  for (int order : {0, 1, 9}) {
    try {
      daubechies(order);
      FAIL("accepted order " << order);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
      CHECK(std::string(e.what()).find("W1") != std::string::npos);
    }
  }
  CHECK(wavelet_family_from_name("db4").order == 4);
  CHECK_THROWS_AS(wavelet_family_from_name("haar"), Error);
}

TEST_CASE("border-free counts") {
  CHECK(border_free_count(1024, 4, 1) == 506);
  CHECK(border_free_count(1024, 4, 4) == 59);
  CHECK(border_free_count(1024, 4, 7) == 3);
  CHECK(border_free_count(1024, 4, 8) <= 0);
  CHECK(border_free_count(1u << 15, 4, 5) == 1019);
}

TEST_CASE("pyramid equals the direct filter-bank sums") {
  const auto paths = random_paths(3, 700, 4);
  for (int order : {2, 3, 5}) {
    const auto f = daubechies(order);
    const auto pyr = mallat_pyramid(paths, f, 4);
    REQUIRE(pyr.max_octave() == 4);
    for (int j = 1; j <= 4; ++j) {
      const auto& d = pyr.at_octave(j);
      CHECK(d.cols() == static_cast<std::size_t>(border_free_count(700, f.support_length(), j)));
      CHECK(pyr.count_at(j) == d.cols());
      CHECK(pyr.valid_ranges[j - 1] == std::pair<std::size_t, std::size_t>{0, d.cols()});
      for (std::size_t r = 0; r < 3; ++r) {
        const auto row = paths.row(r);
        const auto expect = direct_details(std::vector<double>(row.begin(), row.end()), f, j);
        REQUIRE(expect.size() >= d.cols());
        for (std::size_t k = 0; k < d.cols(); ++k) CHECK(d(r, k) == doctest::Approx(expect[k]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pyramid is linear") {
  const auto x = random_paths(2, 512, 1), y = random_paths(2, 512, 2);
  const double alpha = 1.75, beta = -0.5;
  const PathMatrix z(alpha * x.data() + beta * y.data());
  const auto f = daubechies(3);
  const auto px = mallat_pyramid(x, f, 3), py = mallat_pyramid(y, f, 3), pz = mallat_pyramid(z, f, 3);
  for (int j = 1; j <= 3; ++j) {
    const Matrix combo = alpha * px.at_octave(j) + beta * py.at_octave(j);
    CHECK(frobenius_norm(combo - pz.at_octave(j)) <= 1e-12 * frobenius_norm(combo));
  }
}

TEST_CASE("polynomials below the vanishing-moment order are annihilated") {
  for (int order : {2, 4}) {
    Matrix m(1, 400);
    for (std::size_t t = 0; t < 400; ++t) {
      const double s = static_cast<double>(t) / 400.0;
      m(0, t) = order == 2 ? 3.0 - 2.0 * s : 1.0 + s - 4.0 * s * s + 2.0 * s * s * s;
    }
    const auto pyr = mallat_pyramid(PathMatrix(m), daubechies(order), 3);
    for (int j = 1; j <= 3; ++j)
      for (double v : pyr.at_octave(j).data()) CHECK(std::abs(v) < 1e-11);
  }
}

TEST_CASE("octaves without border-free coefficients are rejected") {
  CHECK_THROWS_AS(mallat_pyramid(random_paths(1, 64, 0), daubechies(2), 5), Error);
  CHECK_THROWS_AS(mallat_pyramid(random_paths(1, 64, 0), daubechies(2), 0), Error);
}

TEST_CASE("wavelet Fourier transform: zero mean and orthonormal periodization") {
  for (int order : {2, 4}) {
    const auto f = daubechies(order);
    CHECK(std::abs(psi_hat(f, 0.0)) < 1e-14);
    // Σ_k |ψ̂(ξ + 2πk)|² = 1 for an orthonormal wavelet.
    for (double xi : {0.3, 1.0, 2.5, 3.1}) {
      double sum = 0.0;
      for (int k = -3000; k <= 3000; ++k) sum += std::norm(psi_hat(f, xi + 2 * std::numbers::pi * k));
      CAPTURE(order);
      CAPTURE(xi);
      CHECK(sum == doctest::Approx(1.0).epsilon(2e-4));
    }
  }
}

TEST_CASE("spectral constant and density shape") {
  CHECK(fbm_spectral_constant(0.5) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
  const auto f = daubechies(2);
  for (double h : {0.2, 0.8}) {
    // Only the ℓ = 0 alias vanishes at the origin.
    const double at0 = wavelet_spectral_density(h, 0.0, 2, f);
    CHECK(std::isfinite(at0));
    CHECK(at0 > 0.0);
    for (double x : {0.1, 1.0, 3.0}) {
      const double v = wavelet_spectral_density(h, x, 2, f);
      CHECK(v > 0.0);
      CHECK(v == doctest::Approx(wavelet_spectral_density(h, -x, 2, f)).epsilon(1e-13));
      // (2^j)^{1+2H} prefactor
      CHECK(wavelet_spectral_density(h, x, 3, f) == doctest::Approx(std::pow(2.0, 1 + 2 * h) * v).epsilon(1e-12));
    }
    CHECK(spectral_series_tail(h, 2, f) < 1e-3);
  }
  CHECK_THROWS_AS(wavelet_spectral_density(0.5, 4.0, 1, f), Error);
  CHECK_THROWS_AS(wavelet_autocovariance(1.2, 1, 0, f), Error);
}

TEST_CASE("autocovariance lags agree between the batch and single-lag entry points") {
  const auto f = daubechies(2);
  const auto all = wavelet_autocovariances(0.6, 3, 5, f);
  REQUIRE(all.size() == 6);
  for (long long k = 0; k <= 5; ++k) CHECK(wavelet_autocovariance(0.6, 3, k, f) == all[static_cast<std::size_t>(k)]);
  CHECK(wavelet_autocovariance(0.6, 3, -2, f) == all[2]);
  CHECK(all[0] > std::abs(all[1]));
}

TEST_CASE("detail-coefficient covariance of simulated fBm matches the spectral oracle") {
  // Octaves 5-6, where the sampled and continuous-time transforms agree.
  const auto f = daubechies(2);
  const std::size_t n = 1u << 14, reps = 40;
  for (double h : {0.2, 0.5, 0.8}) {
    RandomStream rng(1000 + static_cast<std::uint64_t>(h * 10));
    for (int j : {5, 6}) {
      const int lags = 3;
      std::vector<double> per_rep_sum(lags, 0.0), per_rep_sq(lags, 0.0);
      for (std::size_t r = 0; r < reps; ++r) {
        const auto path = synth_fbm(h, n, rng);
        Matrix m(1, n);
        std::copy(path.begin(), path.end(), m.data().begin());
        const auto d = mallat_pyramid(PathMatrix(m), f, j).at_octave(j);
        for (int k = 0; k < lags; ++k) {
          double acc = 0.0;
          for (std::size_t t = 0; t + k < d.cols(); ++t) acc += d(0, t) * d(0, t + k);
          const double est = acc / static_cast<double>(d.cols() - k);
          per_rep_sum[k] += est;
          per_rep_sq[k] += est * est;
        }
      }
      const auto theory = wavelet_autocovariances(h, j, lags - 1, f);
      for (int k = 0; k < lags; ++k) {
        const double mean = per_rep_sum[k] / reps;
        const double se = std::sqrt(std::max(0.0, per_rep_sq[k] / reps - mean * mean) / reps);
        CAPTURE(h);
        CAPTURE(j);
        CAPTURE(k);
        CHECK(std::abs(mean - theory[k]) <= 0.05 * theory[0] + 3.0 * se);
      }
    }
  }
}

}
