#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gibbs/error.hpp"
#include "gibbs/spectral.hpp"
#include "gibbs/transfer.hpp"
#include "oracles.hpp"

using namespace gibbs;

namespace {

const int kDigits[] = {2, 3, 4, 5, 6};

SpectralData solve(const IFSSystem& s, std::size_t n) {
  return leading_eigentriple(assemble(s, ChebGrid(n)));
}

IFSSystem gauss(GaussPotential p = GaussPotential::kNegGeometric) {
  return preset_gauss_restricted(kDigits, p);
}

}  // namespace

TEST_CASE("Cantor pressure vanishes and h is constant") {
  for (auto w : {std::array{0.5, 0.5}, std::array{0.3, 0.7}, std::array{0.9, 0.1}}) {
    for (std::size_t n : {1u, 16u, 64u, 200u}) {
      const auto d = solve(preset_cantor(1.0 / 3.0, w), n);
      CHECK(std::abs(d.pressure) <= 1e-13);
      for (double h : d.h) CHECK(std::abs(h - 1.0) <= 1e-12);
      // mu is proportional to nu when h is constant.
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(d.mu[j] - d.nu[j] / std::accumulate(d.nu.begin(), d.nu.end(), 0.0)) <= 1e-13);
      }
    }
  }
}

TEST_CASE("normalisation and residuals") {
  const auto d = solve(gauss(), 64);
  CHECK(*std::max_element(d.h.begin(), d.h.end()) == 1.0);
  double nuh = 0.0, mu = 0.0;
  for (std::size_t j = 0; j < 64; ++j) {
    nuh += d.nu[j] * d.h[j];
    mu += d.mu[j];
    CHECK(d.h[j] > 0.0);
  }
  CHECK(nuh == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.right_residual <= 1e-12);
  CHECK(d.left_residual <= 1e-12);
  CHECK(d.pressure == doctest::Approx(std::log(d.eigenvalue)));
  CHECK(d.iterations > 0);
}

TEST_CASE("power iteration agrees with a dense eigensolver") {
  for (auto p : {GaussPotential::kNegGeometric, GaussPotential::kGeometric,
                 GaussPotential::kConstant}) {
    const auto L = assemble(gauss(p), ChebGrid(48));
    const auto d = leading_eigentriple(L);
    Eigen::EigenSolver<Eigen::MatrixXd> es(L.entries);
    double lead = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (std::abs(es.eigenvalues()[i]) > std::abs(lead)) lead = es.eigenvalues()[i].real();
    }
    CHECK(d.eigenvalue == doctest::Approx(lead).epsilon(1e-12));
  }
}

TEST_CASE("self-convergence of the Gauss pressure and eigenfunction") {
  const auto d100 = solve(gauss(), 100);
  const auto d200 = solve(gauss(), 200);
  CHECK(std::abs(d100.pressure - d200.pressure) <= 1e-12 * std::abs(d200.pressure));

  const auto d80 = solve(gauss(), 80);
  const auto d160 = solve(gauss(), 160);
  // Both are scaled to sup 1 on their own grids; compare after matching at x = -1.
  const double scale = eigenfunction(d80, -1.0) / eigenfunction(d160, -1.0);
  for (double x : oracle::uniform_points(50, 11)) {
    CHECK(std::abs(eigenfunction(d80, x) - scale * eigenfunction(d160, x)) <= 1e-10);
  }
}

TEST_CASE("eigenfunction interpolation") {
  const auto c = solve(preset_cantor(0.2), 12);
  for (double x : oracle::uniform_points(10, 1)) CHECK(eigenfunction(c, x) == doctest::Approx(1.0).epsilon(1e-12));
  const auto d = solve(gauss(), 30);
  for (std::size_t j = 0; j < 30; ++j) CHECK(eigenfunction(d, d.grid.node(j)) == d.h[j]);
}

TEST_CASE("power iteration edge cases") {
  Eigen::MatrixXd A(2, 2);
  A << 2, 1, 1, 3;
  const auto r = power_iteration(A, false);
  CHECK(r.eigenvalue == doctest::Approx((5 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(r.vector.maxCoeff() == 1.0);
  const auto l = power_iteration(A, true);
  CHECK(l.eigenvalue == doctest::Approx(r.eigenvalue).epsilon(1e-14));

  // A rotation has no dominant eigenvalue.
  Eigen::MatrixXd R(2, 2);
  R << 0, -1, 1, 0;
  CHECK_THROWS_AS(power_iteration(R, false, {1e-14, 200}), NumericalError);

  // Leading eigenvalue negative.
  Eigen::MatrixXd N(1, 1);
  N << -2;
  TransferMatrix tm{ChebGrid(1), N, "neg"};
  CHECK_THROWS_AS(leading_eigentriple(tm), NumericalError);

  // Positive eigenvalue with an eigenvector of mixed sign.
  Eigen::MatrixXd M(2, 2);
  M << 2, 0, -6, -1;
  TransferMatrix mixed{ChebGrid(2), M, "mixed"};
  CHECK_THROWS_AS(leading_eigentriple(mixed), NumericalError);
}

TEST_CASE("json round trip") {
  const auto d = solve(gauss(), 20);
  const auto back = spectral_from_json(nlohmann::json::parse(to_json(d).dump()));
  CHECK(back.size() == 20);
  CHECK(back.pressure == d.pressure);
  CHECK(back.h == d.h);
  CHECK(back.nu == d.nu);
  CHECK(back.mu == d.mu);
  CHECK(back.system_name == d.system_name);
  CHECK(back.right_residual == d.right_residual);

  auto broken = to_json(d);
  broken["h"].erase(0);
  CHECK_THROWS_AS(spectral_from_json(broken), ConfigError);
  CHECK_THROWS_AS(spectral_from_json(nlohmann::json::object()), ConfigError);
}
