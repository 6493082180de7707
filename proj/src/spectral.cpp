#include "gibbs/spectral.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gibbs/error.hpp"

namespace gibbs {

namespace {

constexpr int kStableSweeps = 3;

double max_abs_entry(const Eigen::VectorXd& v, Eigen::Index* where) {
  return v.cwiseAbs().maxCoeff(where);
}

}  // namespace

PowerIterationResult power_iteration(const Eigen::MatrixXd& A, bool transpose,
                                     const PowerIterationOptions& options) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || n == 0) {
    throw NumericalError("power iteration needs a non-empty square matrix");
  }
  if (!(options.tol > 0.0)) throw ConfigError("tolerance must be positive");
  const int max_iter =
      options.max_iter > 0 ? options.max_iter : 100 * static_cast<int>(n);

  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd w(n);
  double previous = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;
  for (int it = 1; it <= max_iter; ++it) {
    if (transpose) {
      w.noalias() = A.transpose() * v;
    } else {
      w.noalias() = A * v;
    }
    const double lambda = v.dot(w) / v.squaredNorm();
    const double change = std::abs(lambda - previous);
    stable = change <= options.tol * std::abs(lambda) ? stable + 1 : 0;
    previous = lambda;

    Eigen::Index at = 0;
    const double scale = max_abs_entry(w, &at);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw NumericalError("power iteration collapsed to the zero vector");
    }
    const double residual = (w - lambda * v).lpNorm<Eigen::Infinity>();
    if (stable >= kStableSweeps && residual <= std::sqrt(options.tol) * scale) {
      PowerIterationResult r;
      r.eigenvalue = lambda;
      r.vector = v;
      r.residual = residual;
      r.iterations = it;
      return r;
    }
    v = w / w(at);
  }
  throw NumericalError(fmt::format(
      "power iteration did not converge in {} sweeps (leading eigenvalue "
      "not dominant?)",
      max_iter));
}

SpectralData leading_eigentriple(const TransferMatrix& L,
                                 const PowerIterationOptions& options) {
  const auto right = power_iteration(L.entries, false, options);
  const auto left = power_iteration(L.entries, true, options);

  const double lambda = right.eigenvalue;
  if (!(lambda > 0.0)) {
    throw NumericalError(
        fmt::format("leading eigenvalue {} is not positive", lambda));
  }
  const Eigen::VectorXd& h = right.vector;
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    if (!(h(j) > 0.0)) {
      throw NumericalError(fmt::format(
          "eigenfunction is not positive at node {} (h = {}); increase N or "
          "check the system",
          j, h(j)));
    }
  }
  const double pairing = left.vector.dot(h);
  if (!(std::abs(pairing) > 0.0)) {
    throw NumericalError("left and right eigenvectors are orthogonal");
  }
  const Eigen::VectorXd nu = left.vector / pairing;
  Eigen::VectorXd mu = nu.cwiseProduct(h);
  mu /= mu.sum();

  SpectralData data;
  data.grid = L.grid;
  data.system_name = L.system_name;
  data.eigenvalue = lambda;
  data.pressure = std::log(lambda);
  data.h.assign(h.data(), h.data() + h.size());
  data.nu.assign(nu.data(), nu.data() + nu.size());
  data.mu.assign(mu.data(), mu.data() + mu.size());
  data.right_residual = (L.entries * h - lambda * h).lpNorm<Eigen::Infinity>() /
                        h.lpNorm<Eigen::Infinity>();
  data.left_residual =
      (L.entries.transpose() * nu - lambda * nu).lpNorm<Eigen::Infinity>() /
      nu.lpNorm<Eigen::Infinity>();
  data.iterations = right.iterations + left.iterations;
  return data;
}

double eigenfunction(const SpectralData& data, double x) {
  return data.grid.interpolate(data.h, x);
}

nlohmann::json to_json(const SpectralData& data) {
  return {
      {"N", data.size()},
      {"system", data.system_name},
      {"eigenvalue", data.eigenvalue},
      {"pressure", data.pressure},
      {"h", data.h},
      {"nu", data.nu},
      {"mu", data.mu},
      {"residuals", {data.right_residual, data.left_residual}},
      {"iterations", data.iterations},
  };
}

SpectralData spectral_from_json(const nlohmann::json& doc) {
  try {
    SpectralData data;
    data.grid = ChebGrid(doc.at("N").get<std::size_t>());
    data.system_name = doc.at("system").get<std::string>();
    data.eigenvalue = doc.at("eigenvalue").get<double>();
    data.pressure = doc.at("pressure").get<double>();
    data.h = doc.at("h").get<std::vector<double>>();
    data.nu = doc.at("nu").get<std::vector<double>>();
    data.mu = doc.at("mu").get<std::vector<double>>();
    data.right_residual = doc.at("residuals").at(0).get<double>();
    data.left_residual = doc.at("residuals").at(1).get<double>();
    data.iterations = doc.value("iterations", 0);
    const auto n = data.size();
    if (data.h.size() != n || data.nu.size() != n || data.mu.size() != n) {
      throw ConfigError("spectral data vectors do not match N");
    }
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed spectral data: {}", e.what()));
  }
}

}  // namespace gibbs
