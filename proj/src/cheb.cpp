#include "gibbs/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "gibbs/error.hpp"

namespace gibbs {

namespace {

constexpr double kNodeSwitch = 1e-8;
constexpr double kIntervalSlack = 1e-12;

template <class T>
T barycentric(std::span<const double> nodes, std::span<const double> weights,
              std::span<const T> values, double x) {
  if (values.size() != nodes.size()) {
    throw ConfigError(fmt::format("expected {} node values, got {}",
                                  nodes.size(), values.size()));
  }
  x = clamp_to_interval(x);
  T num{};
  double den = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double d = x - nodes[j];
    if (d == 0.0) return values[j];
    const double t = weights[j] / d;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

}  // namespace

double clamp_to_interval(double x) {
  if (!(std::abs(x) <= 1.0 + kIntervalSlack)) {
    throw DomainError(fmt::format("point {} lies outside [-1, 1]", x));
  }
  return std::clamp(x, -1.0, 1.0);
}

ChebGrid::ChebGrid(std::size_t n) {
  if (n == 0) throw ConfigError("grid size N must be at least 1");
  nodes_.resize(n);
  thetas_.resize(n);
  weights_.resize(n);
  const double two_n = 2.0 * static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    // sin of an exactly negated argument keeps the nodes symmetric about 0.
    const double m = static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(j);
    nodes_[j] = std::sin(std::numbers::pi * m / two_n);
    thetas_[j] = std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / two_n;
    weights_[j] = (j % 2 == 0 ? -1.0 : 1.0) * std::sin(thetas_[j]);
  }
}

double ChebGrid::lagrange_basis(std::size_t k, double x) const {
  if (k >= size()) {
    throw ConfigError(fmt::format("basis index {} out of range for N = {}", k,
                                  size()));
  }
  const double theta = std::acos(clamp_to_interval(x));
  if (size() == 1) return 1.0;
  const double n = static_cast<double>(size());
  const double diff = theta - thetas_[k];
  const double sum = theta + thetas_[k];
  double first;
  if (std::abs(diff) < kNodeSwitch) {
    first = 1.0 - diff * diff * (2.0 * n * n + 1.0) / 12.0;
  } else {
    first = std::sin(n * diff) / std::tan(0.5 * diff) / (2.0 * n);
  }
  const double second = std::sin(n * sum) / std::tan(0.5 * sum) / (2.0 * n);
  return first + second;
}

void ChebGrid::lagrange_basis_all(double x, std::span<double> out) const {
  if (out.size() != size()) {
    throw ConfigError("output span does not match grid size");
  }
  x = clamp_to_interval(x);
  double den = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    const double d = x - nodes_[j];
    if (d == 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      out[j] = 1.0;
      return;
    }
    out[j] = weights_[j] / d;
    den += out[j];
  }
  for (double& v : out) v /= den;
}

double ChebGrid::interpolate(std::span<const double> values, double x) const {
  return barycentric<double>(nodes_, weights_, values, x);
}

std::complex<double> ChebGrid::interpolate(
    std::span<const std::complex<double>> values, double x) const {
  return barycentric<std::complex<double>>(nodes_, weights_, values, x);
}

NodePolynomial::NodePolynomial(ChebGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError(fmt::format("expected {} node values, got {}",
                                  grid_.size(), values_.size()));
  }
}

}  // namespace gibbs
