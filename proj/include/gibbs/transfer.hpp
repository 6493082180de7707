#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "gibbs/cheb.hpp"
#include "gibbs/system.hpp"

namespace gibbs {

/// Collocation matrix of the transfer operator on the Lagrange basis:
///   L[j, k] = (L_phi l_k)(x_j) = sum_i exp(phi_i(x_j)) l_k(g_i(x_j)).
/// Row j acting on node values gives the operator's output at node j.
struct TransferMatrix {
  ChebGrid grid;
  Eigen::MatrixXd entries;
  std::string system_name;

  std::size_t size() const noexcept { return grid.size(); }
};

/// Assembles the N x N matrix, rows in parallel.  Throws DomainError naming
/// the branch and node when an image leaves [-1, 1] or an expression cannot
/// be evaluated, NumericalError on non-finite entries.
TransferMatrix assemble(const IFSSystem& system, const ChebGrid& grid);

/// The exact operator: sum_i exp(phi_i(x)) psi(g_i(x)).
double apply_operator(const IFSSystem& system,
                      const std::function<double(double)>& psi, double x);

/// Row-major dump, one matrix row per line, 17 significant digits.
void write_csv(const TransferMatrix& matrix, std::ostream& out);

}  // namespace gibbs
