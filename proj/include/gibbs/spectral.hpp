#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "gibbs/cheb.hpp"
#include "gibbs/transfer.hpp"

namespace gibbs {

/// Leading eigendata of a transfer matrix and the equilibrium weights
///   mu_j = nu_j h_j / sum_i nu_i h_i.
/// Normalised so that max_j h_j = 1 and nu . h = 1.
struct SpectralData {
  ChebGrid grid{1};
  std::string system_name;
  double eigenvalue = 1.0;
  double pressure = 0.0;  // log(eigenvalue)
  std::vector<double> h;
  std::vector<double> nu;
  std::vector<double> mu;
  double right_residual = 0.0;  // |L h - lambda h|_inf / |h|_inf
  double left_residual = 0.0;   // |nu L - lambda nu|_inf / |nu|_inf
  int iterations = 0;

  std::size_t size() const noexcept { return grid.size(); }
};

struct PowerIterationOptions {
  double tol = 1e-14;
  int max_iter = 0;  // 0 selects 100 N
};

struct PowerIterationResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd vector;  // sup-normalised, largest entry +1
  double residual = 0.0;
  int iterations = 0;
};

/// Power iteration from the all-ones vector on A (or its transpose).  Stops
/// once successive Rayleigh quotients agree to tol (relative) on three
/// consecutive sweeps and the residual |A v - lambda v| is below sqrt(tol)
/// relative to |A v|.  Throws NumericalError after max_iter sweeps.
PowerIterationResult power_iteration(const Eigen::MatrixXd& A, bool transpose,
                                     const PowerIterationOptions& options = {});

/// Throws NumericalError on non-convergence, a non-positive eigenvalue or a
/// right eigenvector that is not strictly positive at every node.
SpectralData leading_eigentriple(const TransferMatrix& L,
                                 const PowerIterationOptions& options = {});

/// h_N(x) by barycentric interpolation of the node values.
double eigenfunction(const SpectralData& data, double x);

nlohmann::json to_json(const SpectralData& data);
SpectralData spectral_from_json(const nlohmann::json& doc);

}  // namespace gibbs
