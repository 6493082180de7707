#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "gibbs/error.hpp"
#include "gibbs/measure.hpp"
#include "gibbs/parallel.hpp"
#include "gibbs/sampler.hpp"
#include "gibbs/transfer.hpp"
#include "oracles.hpp"

using namespace gibbs;

namespace {

const int kDigits[] = {2, 3, 4, 5, 6};

SpectralData solve(const IFSSystem& s, std::size_t n) {
  return leading_eigentriple(assemble(s, ChebGrid(n)));
}

bool slow_tests() {
  const char* v = std::getenv("GIBBS_SLOW_TESTS");
  return v && *v && std::string(v) != "0";
}

double one(double) { return 1.0; }
double id(double x) { return x; }

}  // namespace

TEST_CASE("branch probabilities") {
  const auto eq = preset_cantor(1.0 / 3.0);
  const auto deq = solve(eq, 32);
  const auto bias = preset_cantor(1.0 / 3.0, {0.3, 0.7});
  const auto dbias = solve(bias, 32);
  for (double x : oracle::uniform_points(20, 5)) {
    const auto p = branch_probabilities(eq, deq, x);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
    const auto q = branch_probabilities(bias, dbias, x);
    CHECK(q[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.7).epsilon(1e-12));
  }

  const auto g = preset_gauss_restricted(kDigits, GaussPotential::kNegGeometric);
  const auto dg = solve(g, 32);
  for (double x : oracle::uniform_points(1000, 6)) {
    const auto p = branch_probabilities(g, dg, x);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-15);
    for (double v : p) CHECK((v > 0.0 && v < 1.0));
  }
  CHECK_THROWS_AS(branch_probabilities(g, dg, 1.5), DomainError);
}

TEST_CASE("constant test function") {
  const auto g = preset_gauss_restricted(kDigits, GaussPotential::kNegGeometric);
  const auto d = solve(g, 32);
  SamplerConfig cfg;
  cfg.T = 2000;
  cfg.T0 = 100;
  cfg.replicas = 5;
  const auto run = run_chain(g, d, cfg, one);
  for (double v : run.replica_values) CHECK(v == 1.0);
  CHECK(run.estimate() == 1.0);
  CHECK(run.std_error() == 0.0);
  const auto conf = run_chain_conformal(g, d, cfg, one);
  for (double v : conf.replica_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("conformal estimator equals the plain one when h is constant") {
  const auto c = preset_cantor(0.4);
  const auto d = solve(c, 16);
  SamplerConfig cfg;
  cfg.T = 5000;
  cfg.replicas = 3;
  const auto a = run_chain(c, d, cfg, id);
  const auto b = run_chain_conformal(c, d, cfg, id);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(b.replica_values[r] == doctest::Approx(a.replica_values[r]).epsilon(1e-12).scale(1e-12));
  }
  cfg.self_normalised_conformal = false;
  const auto u = run_chain_conformal(c, d, cfg, id);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(u.replica_values[r] == doctest::Approx(a.replica_values[r]).epsilon(1e-12).scale(1e-12));
  }
}

TEST_CASE("determinism") {
  const auto g = preset_gauss_restricted(kDigits, GaussPotential::kNegGeometric);
  const auto d = solve(g, 24);
  SamplerConfig cfg;
  cfg.T = 20000;
  cfg.T0 = 1000;
  cfg.replicas = 4;
  cfg.seed = 99;
  const unsigned before = max_threads();
  set_max_threads(1);
  const auto a = run_chain(g, d, cfg, id);
  set_max_threads(4);
  const auto b = run_chain(g, d, cfg, id);
  set_max_threads(before);
  CHECK(a.replica_values == b.replica_values);
  CHECK(a.estimate() == b.estimate());
  cfg.seed = 100;
  const auto c = run_chain(g, d, cfg, id);
  CHECK(c.replica_values != a.replica_values);
  // Replicas use distinct streams.
  CHECK(a.replica_values[0] != a.replica_values[1]);

  ReplicaRng r1(5, 0), r2(5, 0), r3(5, 1);
  bool differ = false;
  for (int i = 0; i < 100; ++i) {
    const double u1 = r1.uniform(), u2 = r2.uniform(), u3 = r3.uniform();
    CHECK(u1 == u2);
    CHECK((u1 >= 0.0 && u1 < 1.0));
    differ = differ || u1 != u3;
  }
  CHECK(differ);
}

TEST_CASE("orbits stay on the attractor") {
  const auto c = preset_cantor(1.0 / 3.0);
  const auto d = solve(c, 16);
  SamplerConfig cfg;
  cfg.T = 100;
  const auto orbit = sample_orbit(c, d, cfg, 5000);
  REQUIRE(orbit.size() == 5000);
  for (double x : orbit) {
    CHECK(std::abs(x) <= 1.0);
    // first and second generation gaps
    CHECK_FALSE((std::abs(x) < 1.0 / 3.0 - 1e-12));
    CHECK_FALSE((std::abs(x) > 5.0 / 9.0 + 1e-12 && std::abs(x) < 7.0 / 9.0 - 1e-12));
  }
  // The orbit is replica 0 of a run with the same config.
  const auto again = sample_orbit(c, d, cfg, 5000);
  CHECK(again == orbit);
}

TEST_CASE("symmetric Cantor mean") {
  const auto c = preset_cantor(1.0 / 3.0);
  const auto d = solve(c, 16);
  SamplerConfig cfg;
  cfg.T = 100000;
  cfg.replicas = 8;
  const auto run = run_chain(c, d, cfg, id);
  CHECK(run.std_error() > 0.0);
  CHECK(std::abs(run.estimate()) <= 5 * run.std_error());
}

TEST_CASE("Gauss chain agrees with the spectral estimates") {
  const auto g = preset_gauss_restricted(kDigits, GaussPotential::kNegGeometric);
  const auto spectral = solve(g, 128);
  const auto d = solve(g, 32);
  SamplerConfig cfg;
  cfg.T = slow_tests() ? 10'000'000 : 1'000'000;
  cfg.replicas = 8;
  const double target = integrate(spectral, id).value;
  const auto run = run_chain(g, d, cfg, id);
  CHECK(run.summary.ci_low <= target);
  CHECK(target <= run.summary.ci_high);
  if (slow_tests()) CHECK(run.summary.ci_high - run.summary.ci_low < 2e-3);

  const double conf_target = integrate_conformal(spectral, id).value;
  const auto conf = run_chain_conformal(g, d, cfg, id);
  CHECK(conf.summary.ci_low <= conf_target);
  CHECK(conf_target <= conf.summary.ci_high);
}

TEST_CASE("remainder transition variant is statistically indistinguishable") {
  const auto g = preset_gauss_restricted(kDigits, GaussPotential::kNegGeometric);
  const auto d = solve(g, 32);
  SamplerConfig cfg;
  cfg.T = 200000;
  cfg.replicas = 8;
  const auto exact = run_chain(g, d, cfg, id);
  cfg.remainder_denominator = true;
  cfg.seed = 1;
  const auto rem = run_chain(g, d, cfg, id);
  CHECK(welch_t_test(exact.replica_values, rem.replica_values) > 0.001);

  const MarkovChain chain(g, d, true);
  ReplicaRng rng(0, 0);
  auto s = chain.start(rng);
  for (int i = 0; i < 1000; ++i) {
    s = chain.step(s, rng);
    CHECK(std::abs(s.x) <= 1.0);
  }
}

TEST_CASE("configuration checks") {
  const auto c = preset_cantor(0.5);
  const auto d = solve(c, 8);
  SamplerConfig cfg;
  cfg.T = 0;
  CHECK_THROWS_AS(run_chain(c, d, cfg, id), ConfigError);
  cfg.T = 10;
  cfg.replicas = 0;
  CHECK_THROWS_AS(run_chain(c, d, cfg, id), ConfigError);
  cfg.replicas = 1;
  cfg.N = 16;
  CHECK_THROWS_AS(run_chain(c, d, cfg, id), ConfigError);
  cfg.N = 8;
  CHECK_NOTHROW(run_chain(c, d, cfg, id));

  // An eigenfunction that is not positive stops the chain.
  SpectralData broken = d;
  for (auto& h : broken.h) h = -1.0;
  CHECK_THROWS_AS(run_chain(c, broken, cfg, id), NumericalError);
}
