#include "gibbs/transfer.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gibbs/error.hpp"
#include "gibbs/parallel.hpp"

namespace gibbs {

TransferMatrix assemble(const IFSSystem& system, const ChebGrid& grid) {
  const std::size_t n = grid.size();
  TransferMatrix result{grid, Eigen::MatrixXd::Zero(n, n), system.name()};
  auto& L = result.entries;

  parallel_for(n, [&](std::size_t j) {
    const double x = grid.node(j);
    std::vector<double> basis(n);
    for (const auto& branch : system.branches()) {
      double y, factor;
      try {
        y = branch.map.eval(x);
        factor = std::exp(branch.weight.eval(x));
        grid.lagrange_basis_all(y, basis);
      } catch (const DomainError& e) {
        throw DomainError(fmt::format("branch '{}' at node {} (x = {}): {}",
                                      branch.label, j, x, e.what()));
      }
      for (std::size_t k = 0; k < n; ++k) L(j, k) += factor * basis[k];
    }
  });

  if (!L.allFinite()) {
    throw NumericalError("transfer matrix has non-finite entries");
  }
  return result;
}

double apply_operator(const IFSSystem& system,
                      const std::function<double(double)>& psi, double x) {
  x = clamp_to_interval(x);
  double sum = 0.0;
  for (const auto& branch : system.branches()) {
    sum += std::exp(branch.weight.eval(x)) * psi(branch.map.eval(x));
  }
  return sum;
}

void write_csv(const TransferMatrix& matrix, std::ostream& out) {
  const auto& L = matrix.entries;
  for (Eigen::Index j = 0; j < L.rows(); ++j) {
    for (Eigen::Index k = 0; k < L.cols(); ++k) {
      fmt::print(out, k == 0 ? "{:.16e}" : ",{:.16e}", L(j, k));
    }
    out << '\n';
  }
}

}  // namespace gibbs
