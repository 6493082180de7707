#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gibbs/system.hpp"

namespace gibbs {

/// Piecewise-constant (Ulam) discretisation of the transfer operator on M
/// equal cells of [-1, 1]:
///   matrix(i, k) = mean over cell i of sum_b exp(phi_b(x)) 1[g_b(x) in cell k],
/// with the cell means taken by the midpoint rule.  `weights` is the
/// normalised product of the leading left and right eigenvectors, i.e. the
/// approximate equilibrium mass of each cell.
struct UlamOperator {
  std::size_t M = 0;
  std::vector<double> edges;  // M + 1 cell boundaries
  Eigen::MatrixXd matrix;
  std::vector<double> weights;
  double eigenvalue = 1.0;

  double midpoint(std::size_t k) const { return 0.5 * (edges[k] + edges[k + 1]); }
};

UlamOperator ulam_assemble(const IFSSystem& system, std::size_t M,
                           std::size_t quad_points = 16);

/// sum_k weights_k exp(-i xi m_k) over the cell midpoints m_k.
std::complex<double> ulam_fourier(const UlamOperator& op, double xi);

template <class F>
auto ulam_integrate(const UlamOperator& op, const F& psi) {
  decltype(psi(0.0)) sum{};
  for (std::size_t k = 0; k < op.M; ++k) sum += op.weights[k] * psi(op.midpoint(k));
  return sum;
}

}  // namespace gibbs
