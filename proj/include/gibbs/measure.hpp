#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>

#include "gibbs/spectral.hpp"

namespace gibbs {

enum class MeasureKind { kEquilibrium, kConformal };

template <class Scalar>
struct WeakEstimate {
  Scalar value{};
  std::size_t N = 0;
  MeasureKind kind = MeasureKind::kEquilibrium;
};

/// Which node vector weights the conformal estimate.  The left eigenvector
/// gives nu_N[P_N psi] / nu_N[1]; the right-eigenvector variant is kept for
/// comparison only.
enum class ConformalWeights { kLeftEigenvector, kRightEigenvector };

/// sum_j w_j psi(x_j).  psi may be real or complex valued; the real weights
/// act on both parts.
template <class F>
auto node_sum(const ChebGrid& grid, std::span<const double> weights,
              const F& psi) {
  using Scalar = std::decay_t<decltype(psi(0.0))>;
  Scalar sum{};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    sum += weights[j] * psi(grid.node(j));
  }
  return sum;
}

/// Equilibrium-measure estimate sum_j mu_j psi(x_j).
template <class F>
auto integrate(const SpectralData& data, const F& psi) {
  using Scalar = std::decay_t<decltype(psi(0.0))>;
  return WeakEstimate<Scalar>{node_sum(data.grid, data.mu, psi), data.size(),
                              MeasureKind::kEquilibrium};
}

/// sum_j v_j, checked to be away from zero (NumericalError within 1e-10).
double conformal_normalisation(const SpectralData& data, ConformalWeights which);

/// Conformal-measure estimate sum_j v_j psi(x_j) / sum_j v_j, v = nu or h.
template <class F>
auto integrate_conformal(
    const SpectralData& data, const F& psi,
    ConformalWeights which = ConformalWeights::kLeftEigenvector) {
  using Scalar = std::decay_t<decltype(psi(0.0))>;
  const double total = conformal_normalisation(data, which);
  const auto& v = which == ConformalWeights::kLeftEigenvector ? data.nu : data.h;
  return WeakEstimate<Scalar>{node_sum(data.grid, v, psi) / total, data.size(),
                              MeasureKind::kConformal};
}

}  // namespace gibbs
