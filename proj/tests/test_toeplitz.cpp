#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavespec/eigen.hpp"
#include "wavespec/toeplitz.hpp"

using namespace wavespec;

TEST_SUITE("toeplitz") {

TEST_CASE("symbols of trigonometric generators") {
  const auto flat = toeplitz_symbol(ToeplitzSpec::from_generator([](double) { return 1.0; }, 4));
  CHECK(flat[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t l = 1; l < 4; ++l) CHECK(std::abs(flat[l]) < 1e-14);

  // f = 2 + cos x + 0.5 cos 3x → τ = (2, 1/2, 0, 1/4)
  const auto trig =
      toeplitz_symbol(ToeplitzSpec::from_generator([](double x) { return 2.0 + std::cos(x) + 0.5 * std::cos(3 * x); }, 5));
  const std::vector<double> expect = {2.0, 0.5, 0.0, 0.25, 0.0};
  for (std::size_t l = 0; l < 5; ++l) CHECK(trig[l] == doctest::Approx(expect[l]).scale(1.0).epsilon(1e-13));
}

TEST_CASE("Toeplitz structure") {
  const auto t = build_toeplitz(ToeplitzSpec::from_symbol({4.0, 1.0, 0.5}));
  REQUIRE(t.order() == 3);
  CHECK(t(0, 0) == 4.0);
  CHECK(t(2, 2) == 4.0);
  CHECK(t(0, 1) == 1.0);
  CHECK(t(1, 2) == 1.0);
  CHECK(t(0, 2) == 0.5);
  CHECK(t(2, 0) == 0.5);
}

TEST_CASE("Gray bounds enclose the spectrum of a trigonometric generator") {
  const auto spec = ToeplitzSpec::from_generator([](double x) { return 2.0 + std::cos(x); }, 64);
  const auto b = gray_bounds(spec);
  CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(3.0).epsilon(1e-12));
  for (double l : eigvalsh(build_toeplitz(spec))) {
    CHECK(l >= b.lower - 1e-9);
    CHECK(l <= b.upper + 1e-9);
  }
}

TEST_CASE("Wiener-class decay check") {
  CHECK(wiener_decay_holds({1.0, 0.3, 0.1, 0.05}, 1.0));
  CHECK_FALSE(wiener_decay_holds({1.0, 0.0, 0.0, 0.9}, 1.0));
}

TEST_CASE("conditional wavelet covariance") {
  const auto f = daubechies(2);
  for (double h : {0.2, 0.8}) {
    const auto cc = conditional_covariance(h, 2, 48, f);
    CAPTURE(h);
    CHECK(cc.sigma(0, 0) == wavelet_autocovariance(h, 2, 0, f));
    CHECK(cc.sigma(3, 7) == wavelet_autocovariance(h, 2, 4, f));
    CHECK(cc.eigenvalues.front() > 0.0);
    const Matrix root = cc.root.to_dense();
    const Matrix sq = root * root;
    CHECK(frobenius_norm(sq - cc.sigma.to_dense()) <= 1e-10 * frobenius_norm(cc.sigma.to_dense()));

    // The generator 2π·f_H reproduces Σ_H's symbol.
    const auto tau = toeplitz_symbol(cc.generator_spec(f));
    for (std::size_t l = 0; l < 6; ++l)
      CHECK(tau[l] == doctest::Approx(cc.sigma(0, l)).scale(cc.sigma(0, 0)).epsilon(1e-8));

    const auto b = gray_bounds(cc.generator_spec(f));
    CHECK(cc.eigenvalues.front() >= b.lower - 1e-6);
    CHECK(cc.eigenvalues.back() <= b.upper + 1e-6);
  }
}

}
