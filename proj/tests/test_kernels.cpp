#include <doctest.h>

#include <omp.h>

#include "oracles.hpp"
#include "wavespec/kernels.hpp"
#include "wavespec/wavelet.hpp"

using namespace wavespec;

TEST_SUITE("kernels") {

TEST_CASE("OpenMP kernels are bit-identical to the serial references") {
  RandomStream rng(17);
  const Matrix x = oracle::gaussian_matrix(13, 3001, rng);
  const auto f = daubechies(3);
  for (int threads : {1, 2, 5}) {
    omp_set_num_threads(threads);
    CAPTURE(threads);
    const auto serial = kernels::mallat_rows_serial(x, f.low_pass, f.high_pass, 6);
    const auto par = kernels::mallat_rows_omp(x, f.low_pass, f.high_pass, 6);
    REQUIRE(serial.size() == par.size());
    for (std::size_t j = 0; j < serial.size(); ++j) CHECK(serial[j] == par[j]);
    CHECK(kernels::scaled_gram_serial(x, 10, 2000) == kernels::scaled_gram_omp(x, 10, 2000));
  }
}

TEST_CASE("Mallat step output length") {
  std::vector<double> in(11, 1.0), a, d;
  const auto f = daubechies(2);
  CHECK(kernels::mallat_step(in, f.low_pass, f.high_pass, a, d) == 4);
  CHECK(a.size() == 4);
  CHECK(d.size() == 4);
  std::vector<double> short_in(3, 1.0);
  CHECK(kernels::mallat_step(short_in, f.low_pass, f.high_pass, a, d) == 0);
}

TEST_CASE("scaled Gram matrix against explicit outer products") {
  RandomStream rng(3);
  const Matrix d = oracle::gaussian_matrix(4, 9, rng);
  const auto w = kernels::scaled_gram_serial(d, 2, 5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t k = 2; k < 7; ++k) acc += d(i, k) * d(j, k);
      CHECK(w(i, j) == doctest::Approx(acc / 5.0).epsilon(1e-14));
    }
}

}
