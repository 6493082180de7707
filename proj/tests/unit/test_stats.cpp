#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gibbs/error.hpp"
#include "gibbs/stats.hpp"

using namespace gibbs;

TEST_CASE("summary of replica values") {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(v);
  CHECK(s.mean == 2.5);
  // sample variance 5/3, se = sqrt(5/12)
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  // t_{0.975, 3} = 3.182446305284263
  CHECK(s.ci_high - s.mean == doctest::Approx(3.182446305284263 * s.std_error).epsilon(1e-12));
  CHECK(s.mean - s.ci_low == doctest::Approx(s.ci_high - s.mean));
  CHECK(s.level == 0.95);

  const auto one = summarize(std::vector<double>{7.0});
  CHECK(one.mean == 7.0);
  CHECK(one.std_error == 0.0);
  CHECK(one.ci_low == 7.0);
  CHECK(one.ci_high == 7.0);

  const auto flat = summarize(std::vector<double>(8, 1.0));
  CHECK(flat.std_error == 0.0);

  CHECK_THROWS_AS(summarize(std::vector<double>{}), ConfigError);
  CHECK_THROWS_AS(summarize(v, 1.0), ConfigError);
}

TEST_CASE("Student t quantiles") {
  CHECK(student_t_quantile(0.975, 7) == doctest::Approx(2.364624251592785).epsilon(1e-12));
  CHECK(student_t_quantile(0.5, 4) == doctest::Approx(0.0).scale(1.0));
  CHECK(student_t_quantile(0.975, 1e6) == doctest::Approx(1.959963984540054).epsilon(1e-5));
}

TEST_CASE("Welch test") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> a(0.0, 1.0), b(0.0, 2.0), c(3.0, 1.0);
  std::vector<double> x(50), y(60), z(40);
  for (auto& v : x) v = a(rng);
  for (auto& v : y) v = b(rng);
  for (auto& v : z) v = c(rng);
  CHECK(welch_t_test(x, y) > 0.01);
  CHECK(welch_t_test(x, z) < 1e-10);
  CHECK(welch_t_test(x, x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(welch_t_test(std::vector<double>{1.0}, x), ConfigError);
}
