// OpenMP kernels against their serial references. Arguments: (p, n) for the
// pyramid, (p, count) for the Gram matrix.

#include <benchmark/benchmark.h>

#include "wavespec/kernels.hpp"
#include "wavespec/rng.hpp"
#include "wavespec/wavelet.hpp"

namespace {

using wavespec::Matrix;

Matrix noise(std::size_t rows, std::size_t cols) {
  wavespec::RandomStream rng(1);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

template <auto Kernel>
void mallat_rows(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), n = static_cast<std::size_t>(state.range(1));
  const Matrix paths = noise(p, n);
  const auto f = wavespec::daubechies(2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(paths, f.low_pass, f.high_pass, 8));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * n));
}

template <auto Kernel>
void scaled_gram(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), count = static_cast<std::size_t>(state.range(1));
  const Matrix d = noise(p, count);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(d, 0, count));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * p * count / 2));
}

constexpr auto mallat_serial = &wavespec::kernels::mallat_rows_serial;
constexpr auto mallat_omp = &wavespec::kernels::mallat_rows_omp;
constexpr auto gram_serial = &wavespec::kernels::scaled_gram_serial;
constexpr auto gram_omp = &wavespec::kernels::scaled_gram_omp;

BENCHMARK(mallat_rows<mallat_serial>)->Name("mallat_rows/serial")->Args({32, 1 << 15})->Args({64, 1 << 18});
BENCHMARK(mallat_rows<mallat_omp>)->Name("mallat_rows/omp")->Args({32, 1 << 15})->Args({64, 1 << 18});
BENCHMARK(scaled_gram<gram_serial>)->Name("scaled_gram/serial")->Args({32, 1 << 10})->Args({64, 1 << 12});
BENCHMARK(scaled_gram<gram_omp>)->Name("scaled_gram/omp")->Args({32, 1 << 10})->Args({64, 1 << 12});

}  // namespace

BENCHMARK_MAIN();
