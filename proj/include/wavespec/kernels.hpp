#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version; both run the same per-item arithmetic in the same order, so their
// outputs are bit-identical and the serial one is kept as the test oracle.

#include <cstddef>
#include <span>
#include <vector>

#include "wavespec/matrix.hpp"

namespace wavespec::kernels {

/// One Mallat analysis step in valid-convolution mode:
/// approx[k] = Σ_i low[i]·in[2k+i], detail[k] = Σ_i high[i]·in[2k+i].
/// Returns the output length floor((in.size() - T)/2) + 1 (0 if in is shorter than T).
std::size_t mallat_step(std::span<const double> in, std::span<const double> low, std::span<const double> high,
                        std::vector<double>& approx, std::vector<double>& detail);

/// Details for octaves 1..max_octave of one series; details[j-1] holds the
/// full valid-convolution output of octave j.
void mallat_row(std::span<const double> series, std::span<const double> low, std::span<const double> high,
                int max_octave, std::vector<std::vector<double>>& details);

/// Row-parallel pyramid over a p × n matrix; out[j-1] is p × len_j.
std::vector<Matrix> mallat_rows_serial(const Matrix& paths, std::span<const double> low,
                                       std::span<const double> high, int max_octave);
std::vector<Matrix> mallat_rows_omp(const Matrix& paths, std::span<const double> low,
                                    std::span<const double> high, int max_octave);

/// (1/count)·Σ_k D[:, first+k] D[:, first+k]ᵀ for k < count.
SymmetricMatrix scaled_gram_serial(const Matrix& d, std::size_t first, std::size_t count);
SymmetricMatrix scaled_gram_omp(const Matrix& d, std::size_t first, std::size_t count);

}  // namespace wavespec::kernels
