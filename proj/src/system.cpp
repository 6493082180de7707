#include "gibbs/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gibbs/error.hpp"

namespace gibbs {

namespace {

constexpr int kRangeGrid = 1001;
constexpr double kRangeTol = 1e-12;

void check_range(const Branch& b) {
  for (int i = 0; i < kRangeGrid; ++i) {
    const double x = -1.0 + 2.0 * i / (kRangeGrid - 1);
    double y;
    try {
      y = b.map.eval(x);
      (void)b.weight.eval(x);
    } catch (const DomainError& e) {
      throw ConfigError(fmt::format("branch '{}' cannot be evaluated at {}: {}",
                                    b.label, x, e.what()));
    }
    if (std::abs(y) > 1.0 + kRangeTol) {
      throw ConfigError(fmt::format(
          "branch '{}' maps {} to {}, outside [-1, 1]", b.label, x, y));
    }
  }
}

}  // namespace

IFSSystem::IFSSystem(std::string name, std::vector<Branch> branches)
    : name_(std::move(name)), branches_(std::move(branches)) {
  if (branches_.empty()) throw ConfigError("system needs at least one branch");
  std::set<std::string> labels;
  for (const auto& b : branches_) {
    if (!labels.insert(b.label).second) {
      throw ConfigError(fmt::format("duplicate branch label '{}'", b.label));
    }
    check_range(b);
  }
}

IFSSystem IFSSystem::with_potential_shift(double shift) const {
  std::vector<Branch> shifted(branches_.begin(), branches_.end());
  for (auto& b : shifted) {
    b.weight = expr::Expr::binary(expr::Kind::kAdd, b.weight,
                                  expr::Expr::number(shift));
  }
  return IFSSystem(name_, std::move(shifted));
}

IFSSystem preset_cantor(double alpha, std::array<double, 2> weights) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ConfigError(fmt::format("Cantor gap alpha = {} not in [0, 1)", alpha));
  }
  if (!(weights[0] > 0.0 && weights[1] > 0.0)) {
    throw ConfigError("Cantor branch weights must be positive");
  }
  const double r = (1.0 - alpha) / 2.0;
  std::vector<Branch> branches;
  branches.push_back({expr::parse(fmt::format("{}*(x + 1) - 1", r)),
                      expr::parse(fmt::format("log({})", weights[0])), "left"});
  branches.push_back({expr::parse(fmt::format("{}*(x - 1) + 1", r)),
                      expr::parse(fmt::format("log({})", weights[1])), "right"});
  return IFSSystem(fmt::format("cantor(alpha={}, w=({}, {}))", alpha,
                               weights[0], weights[1]),
                   std::move(branches));
}

IFSSystem preset_gauss_restricted(std::span<const int> digits,
                                  GaussPotential potential) {
  if (digits.empty()) throw ConfigError("Gauss preset needs at least one digit");
  std::set<int> seen;
  std::vector<Branch> branches;
  for (int d : digits) {
    if (d < 1) {
      throw ConfigError(fmt::format("continued fraction digit {} must be >= 1", d));
    }
    if (!seen.insert(d).second) {
      throw ConfigError(fmt::format("duplicate digit {}", d));
    }
    // tau^{-1}(1/(d + tau(x))) with tau(x) = (x + 1)/2.
    const std::string map = fmt::format("2/({} + (x + 1)/2) - 1", d);
    // |g'(x)| = 1/(d + tau(x))^2
    std::string weight;
    switch (potential) {
      case GaussPotential::kGeometric:
        weight = fmt::format("2*log({} + (x + 1)/2)", d);
        break;
      case GaussPotential::kNegGeometric:
        weight = fmt::format("-2*log({} + (x + 1)/2)", d);
        break;
      case GaussPotential::kConstant:
        weight = "0";
        break;
    }
    branches.push_back({expr::parse(map), expr::parse(weight),
                        fmt::format("d{}", d)});
  }
  const char* kind = potential == GaussPotential::kGeometric      ? "geometric"
                     : potential == GaussPotential::kNegGeometric ? "neg_geometric"
                                                                  : "constant";
  return IFSSystem(fmt::format("gauss(digits={}, potential={})",
                               fmt::join(digits, ","), kind),
                   std::move(branches));
}

ContractionReport diagnose_contraction(const IFSSystem& system,
                                       int grid_points) {
  if (grid_points < 100) {
    throw ConfigError("contraction diagnostic needs at least 100 grid points");
  }
  ContractionReport report;
  for (const auto& b : system.branches()) {
    const expr::Expr dg = b.map.derivative();
    double sup = 0.0;
    bool ok = true;
    for (int i = 0; i < grid_points && ok; ++i) {
      const double theta = std::numbers::pi * (i + 0.5) / grid_points;
      const double x = std::cos(theta);
      try {
        const double g = b.map.eval(x);
        const double gap = (1.0 - g) * (1.0 + g);
        if (!(gap > 0.0)) {
          ok = false;
          break;
        }
        const double v = std::abs(dg.eval(x)) * std::sin(theta) / std::sqrt(gap);
        sup = std::max(sup, v);
      } catch (const DomainError&) {
        ok = false;
      }
    }
    report.sup.push_back(ok ? sup : std::numeric_limits<double>::infinity());
    report.evaluable.push_back(ok);
  }
  const double worst = *std::max_element(report.sup.begin(), report.sup.end());
  report.certified = worst < 1.0 - 1e-6;
  report.c_est = std::isfinite(worst) ? 1.0 - worst : -1.0;
  return report;
}

}  // namespace gibbs
