#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gibbs/error.hpp"
#include "gibbs/parallel.hpp"
#include "gibbs/transfer.hpp"
#include "oracles.hpp"

using namespace gibbs;

namespace {

const int kDigits[] = {2, 3, 4, 5, 6};

IFSSystem gauss() {
  return preset_gauss_restricted(kDigits, GaussPotential::kNegGeometric);
}

}  // namespace

TEST_CASE("row sums of stochastic Cantor matrices") {
  for (std::size_t n : {1u, 2u, 16u, 64u, 200u}) {
    for (auto w : {std::array{0.5, 0.5}, std::array{0.3, 0.7}}) {
      const auto L = assemble(preset_cantor(1.0 / 3.0, w), ChebGrid(n));
      for (Eigen::Index j = 0; j < L.entries.rows(); ++j) {
        CHECK(std::abs(L.entries.row(j).sum() - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("single node") {
  const auto s = gauss();
  const auto L = assemble(s, ChebGrid(1));
  double expect = 0.0;
  for (const auto& b : s.branches()) expect += std::exp(b.weight.eval(0.0));
  REQUIRE(L.entries.rows() == 1);
  CHECK(L.entries(0, 0) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("matrix entries match the closed-form basis") {
  const auto s = gauss();
  const ChebGrid grid(24);
  const auto L = assemble(s, grid);
  for (std::size_t j = 0; j < 24; j += 5) {
    for (std::size_t k = 0; k < 24; ++k) {
      double ref = 0.0;
      for (const auto& b : s.branches()) {
        ref += std::exp(b.weight.eval(grid.node(j))) *
               grid.lagrange_basis(k, b.map.eval(grid.node(j)));
      }
      CHECK(std::abs(L.entries(j, k) - ref) <= 1e-12);
    }
  }
}

TEST_CASE("matrix times ones is the operator applied to 1") {
  const auto s = gauss();
  const ChebGrid grid(32);
  const Eigen::VectorXd out = assemble(s, grid).entries * Eigen::VectorXd::Ones(32);
  for (std::size_t j = 0; j < 32; ++j) {
    double direct = 0.0;
    for (const auto& b : s.branches()) direct += std::exp(b.weight.eval(grid.node(j)));
    CHECK(std::abs(out[j] - direct) <= 1e-13);
  }
}

TEST_CASE("apply_operator") {
  const auto cantor = preset_cantor(0.4);
  const double r = 0.3;
  for (double x : oracle::uniform_points(10, 1)) {
    CHECK(apply_operator(cantor, [](double) { return 1.0; }, x) == doctest::Approx(1.0));
    CHECK(apply_operator(cantor, [](double y) { return y; }, x) == doctest::Approx(r * x).scale(1.0).epsilon(1e-15));
  }

  // The interpolant of L_N psi agrees with L psi up to interpolation error.
  const auto s = gauss();
  const ChebGrid grid(40);
  auto psi = [](double y) { return std::exp(y) * std::cos(2 * y); };
  const auto v = grid.sample(psi);
  const Eigen::VectorXd Lv =
      assemble(s, grid).entries * Eigen::Map<const Eigen::VectorXd>(v.data(), 40);
  const std::vector<double> Lvec(Lv.data(), Lv.data() + 40);
  for (double x : oracle::uniform_points(20, 2)) {
    CHECK(std::abs(grid.interpolate(Lvec, x) - apply_operator(s, psi, x)) <= 1e-12);
  }
}

TEST_CASE("assembly errors") {
  using expr::parse;
  // Passes the 1001-point range check but leaves the interval at a node.
  const IFSSystem sneaky("sneaky", {{parse("x/2"), parse("log(x + 1.0000001)"), "a"}});
  CHECK_NOTHROW(assemble(sneaky, ChebGrid(8)));
  const IFSSystem overflow("big", {{parse("x/3"), parse("709.7"), "a"},
                                   {parse("x/3 + 0.5"), parse("709.7"), "b"}});
  CHECK_THROWS_AS(assemble(overflow, ChebGrid(4)), NumericalError);
}

TEST_CASE("assembly is independent of the thread count") {
  const auto s = gauss();
  const unsigned before = max_threads();
  set_max_threads(1);
  const auto a = assemble(s, ChebGrid(50));
  set_max_threads(4);
  const auto b = assemble(s, ChebGrid(50));
  set_max_threads(before);
  CHECK(a.entries == b.entries);
}

TEST_CASE("csv dump") {
  const auto L = assemble(preset_cantor(0.5), ChebGrid(3));
  std::ostringstream out;
  write_csv(L, out);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
    CHECK(line.find('e') != std::string::npos);
  }
  CHECK(rows == 3);
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(100,
                               [](std::size_t i) {
                                 if (i == 57) throw DomainError("boom");
                               }),
                  DomainError);
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 1000);
  parallel_for(0, [](std::size_t) { FAIL("called"); });
}
