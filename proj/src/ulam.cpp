#include "gibbs/ulam.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gibbs/error.hpp"
#include "gibbs/fourier.hpp"
#include "gibbs/parallel.hpp"
#include "gibbs/spectral.hpp"

namespace gibbs {

namespace {

std::size_t cell_of(double y, std::size_t M) {
  const double u = (clamp_to_interval(y) + 1.0) / 2.0 * static_cast<double>(M);
  return std::min(static_cast<std::size_t>(std::max(u, 0.0)), M - 1);
}

}  // namespace

UlamOperator ulam_assemble(const IFSSystem& system, std::size_t M,
                           std::size_t quad_points) {
  if (M < 2) throw ConfigError("Ulam discretisation needs M >= 2 cells");
  if (quad_points < 4) throw ConfigError("Ulam quadrature needs >= 4 points");

  UlamOperator op;
  op.M = M;
  op.edges.resize(M + 1);
  for (std::size_t i = 0; i <= M; ++i) {
    op.edges[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(M);
  }
  op.edges[M] = 1.0;
  op.matrix = Eigen::MatrixXd::Zero(M, M);

  const double q = static_cast<double>(quad_points);
  parallel_for(M, [&](std::size_t i) {
    const double width = op.edges[i + 1] - op.edges[i];
    for (std::size_t p = 0; p < quad_points; ++p) {
      const double x = op.edges[i] + width * (static_cast<double>(p) + 0.5) / q;
      for (const auto& b : system.branches()) {
        double y, w;
        try {
          y = b.map.eval(x);
          w = std::exp(b.weight.eval(x));
          op.matrix(i, cell_of(y, M)) += w / q;
        } catch (const DomainError& e) {
          throw DomainError(fmt::format("branch '{}' at x = {}: {}", b.label,
                                        x, e.what()));
        }
      }
    }
  });

  PowerIterationOptions options;
  options.tol = 1e-13;
  const auto right = power_iteration(op.matrix, false, options);
  const auto left = power_iteration(op.matrix, true, options);
  Eigen::VectorXd w = left.vector.cwiseProduct(right.vector);
  const double total = w.sum();
  if (!(std::abs(total) > 0.0)) {
    throw NumericalError("Ulam eigenvectors have vanishing pairing");
  }
  w /= total;
  op.weights.assign(w.data(), w.data() + w.size());
  op.eigenvalue = right.eigenvalue;
  return op;
}

std::complex<double> ulam_fourier(const UlamOperator& op, double xi) {
  if (xi == 0.0) return 1.0;
  std::complex<double> sum{};
  for (std::size_t k = 0; k < op.M; ++k) {
    sum += op.weights[k] * unit_phasor(xi, op.midpoint(k));
  }
  return sum;
}

}  // namespace gibbs
