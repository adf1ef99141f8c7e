#include "wavespec/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wavespec/error.hpp"

namespace wavespec {

namespace {

GaussLegendre compute_rule(std::size_t order) {
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(order) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      const double pn = order == 1 ? x : p1;
      const double pnm1 = order == 1 ? 1.0 : p0;
      dp = static_cast<double>(order) * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendre> gauss_legendre(std::size_t order) {
  if (order < 1) throw Error(ErrorKind::Validation, "Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_shared<const GaussLegendre>(compute_rule(order));
  return slot;
}

}  // namespace wavespec
