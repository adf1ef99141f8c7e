#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace wavespec {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rules are computed once per order and shared (thread-safe).
std::shared_ptr<const GaussLegendre> gauss_legendre(std::size_t order);

}  // namespace wavespec
