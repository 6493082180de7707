#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gibbs {

/// Chebyshev nodes of the first kind on [-1, 1],
///   x_n = cos(theta_n),  theta_n = (2n - 1) pi / (2N),  n = 1..N,
/// stored 0-based and in decreasing order, together with the barycentric
/// weights (-1)^n sin(theta_n) of the node-value (Lagrange) representation.
class ChebGrid {
 public:
  /// Throws ConfigError for n == 0.
  explicit ChebGrid(std::size_t n);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> thetas() const noexcept { return thetas_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double node(std::size_t j) const { return nodes_[j]; }

  /// Value of the Lagrange polynomial attached to node k at x, through the
  /// trigonometric closed form.  Within 1e-8 of the node angle the removable
  /// singularity is replaced by its second-order expansion.
  double lagrange_basis(std::size_t k, double x) const;

  /// All N Lagrange polynomials at x (barycentric form).  out.size() == N.
  void lagrange_basis_all(double x, std::span<double> out) const;

  /// Evaluates the degree N-1 interpolant of the node values at x
  /// (barycentric formula; exact at the nodes).
  double interpolate(std::span<const double> values, double x) const;
  std::complex<double> interpolate(std::span<const std::complex<double>> values,
                                   double x) const;

  /// Node values f(x_j).
  template <class F>
  std::vector<double> sample(F&& f) const {
    std::vector<double> v(size());
    for (std::size_t j = 0; j < size(); ++j) v[j] = f(nodes_[j]);
    return v;
  }

  friend bool operator==(const ChebGrid& a, const ChebGrid& b) {
    return a.size() == b.size();
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> thetas_;
  std::vector<double> weights_;
};

/// Brings a point that is within 1e-12 of [-1, 1] onto the interval; throws
/// DomainError for anything further out.
double clamp_to_interval(double x);

/// A polynomial in E_N given by its values at the grid nodes.
class NodePolynomial {
 public:
  NodePolynomial(ChebGrid grid, std::vector<double> values);

  const ChebGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(double x) const { return grid_.interpolate(values_, x); }

 private:
  ChebGrid grid_;
  std::vector<double> values_;
};

}  // namespace gibbs
