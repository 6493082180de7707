#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gibbs/expr.hpp"

namespace gibbs {

/// One contraction g of the IFS together with its potential weight phi, so
/// that the transfer operator is  (L psi)(x) = sum_i exp(phi_i(x)) psi(g_i(x)).
struct Branch {
  expr::Expr map;
  expr::Expr weight;
  std::string label;
};

/// A finite iterated function system on [-1, 1] with a potential.
///
/// Construction checks that there is at least one branch, that labels are
/// unique and that every branch maps [-1, 1] into itself (1001-point grid,
/// tolerance 1e-12).  Throws ConfigError otherwise.
class IFSSystem {
 public:
  IFSSystem(std::string name, std::vector<Branch> branches);

  const std::string& name() const noexcept { return name_; }
  std::span<const Branch> branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }

  /// Same branches with every potential shifted by a constant.
  IFSSystem with_potential_shift(double shift) const;

 private:
  std::string name_;
  std::vector<Branch> branches_;
};

/// Two affine branches g1(x) = r(x + 1) - 1, g2(x) = r(x - 1) + 1 with
/// r = (1 - alpha)/2, removing the middle fraction alpha of [-1, 1], and
/// constant potentials log(w).  alpha = 0 gives the uniform measure.
IFSSystem preset_cantor(double alpha, std::array<double, 2> weights = {0.5, 0.5});

enum class GaussPotential {
  kGeometric,     // +log|f' o g| = -log|g'|
  kNegGeometric,  // -log|f' o g| = log|g'|
  kConstant,      // 0
};

/// Inverse branches y -> 1/(d + y) of the Gauss map for the given continued
/// fraction digits, conjugated from [0, 1] to [-1, 1] by tau(x) = (x + 1)/2.
IFSSystem preset_gauss_restricted(std::span<const int> digits,
                                  GaussPotential potential);

struct ContractionReport {
  /// Per branch: max over the theta grid of |d/dtheta acos(g(cos theta))|.
  std::vector<double> sup;
  /// False for a branch whose image touched +-1 in the interior of the grid.
  std::vector<bool> evaluable;
  bool certified = false;
  /// 1 - max(sup): heuristic frequency-resolution constant.
  double c_est = 0.0;
};

/// Grid-max heuristic for the contraction condition
///   sup_theta |(acos o g o cos)'(theta)| < 1,
/// evaluated at the midpoints of a uniform theta grid on [0, pi].
ContractionReport diagnose_contraction(const IFSSystem& system,
                                       int grid_points = 2000);

}  // namespace gibbs
