#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "whext/grid_space.hpp"

using namespace whext;

TEST_SUITE("grid_space") {
  TEST_CASE("uniform grid points") {
    auto g = Grid::uniform(11);
    CHECK(g->size() == 11);
    CHECK((*g)[0] == 0.0);
    CHECK((*g)[10] == 1.0);
    CHECK((*g)[5] == doctest::Approx(0.5));
    CHECK(g->is_uniform());
    CHECK(Grid::uniform(1)->size() == 1);
    CHECK((*Grid::uniform(1))[0] == 0.0);
    CHECK_THROWS_AS(Grid::uniform(0), std::invalid_argument);
    CHECK(g->nearest(0.52) == 5);
    CHECK(g->nearest(-3.0) == 0);
  }

  TEST_CASE("label grids") {
    auto g = Grid::labels({0.3, -1.0, 2.0});
    CHECK_FALSE(g->is_uniform());
    CHECK(g->size() == 3);
    CHECK_THROWS_AS(Grid::labels({}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::labels({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::labels({NAN}), std::invalid_argument);
    CHECK_THROWS_AS(g->trapezoid_weights(), std::invalid_argument);
  }

  TEST_CASE("sup norm") {
    auto g = Grid::uniform(5);
    CHECK(sup_norm(GridFunction::constant(g, 0.0)) == 0.0);
    const std::vector<double> x{-2.0, 1.0, 0.5};
    CHECK(sup_norm(x) == 2.0);
    auto g11 = Grid::uniform(11);
    CHECK(sup_norm(GridFunction::sample(g11, [](double t) { return t; })) == 1.0);
  }

  TEST_CASE("Hilbert norm") {
    CHECK(h_norm(HVector({3.0, 4.0})) == 5.0);
    CHECK(h_norm(HVector({0.0, 0.0, 0.0})) == 0.0);
    CHECK(h_norm(HVector({1.0, 1.0, 1.0, 1.0})) == 2.0);
    CHECK_THROWS_AS(HVector({}), std::invalid_argument);
  }

  TEST_CASE("trapezoid integral") {
    auto g = Grid::uniform(101);
    CHECK(integrate(GridFunction::constant(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(integrate(GridFunction::sample(g, [](double t) { return t; })) - 0.5) <= 1e-15);
    CHECK(std::abs(integrate(GridFunction::sample(g, [](double t) { return t * t; })) - 1.0 / 3.0) <= 2e-5);
    CHECK_THROWS_AS(integrate(GridFunction::constant(Grid::uniform(1), 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(integrate(GridFunction::constant(Grid::labels({0.0, 0.5, 1.0}), 1.0)), std::invalid_argument);
  }

  TEST_CASE("trapezoid error shrinks like h^2") {
    double prev = 0;
    for (std::size_t n : {11u, 21u, 41u, 81u}) {
      const double err =
          std::abs(integrate(GridFunction::sample(Grid::uniform(n), [](double t) { return t * t; })) - 1.0 / 3.0);
      if (prev > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
      prev = err;
    }
  }

  TEST_CASE("axpy") {
    auto g = Grid::uniform(7);
    auto x = GridFunction::constant(g, 1.0), y = GridFunction::constant(g, 3.0);
    CHECK(axpy(0.0, x, y) == y);
    CHECK(axpy(1.0, x, GridFunction::constant(g, 0.0)) == x);
    CHECK(axpy(2.0, x, y) == GridFunction::constant(g, 5.0));
    CHECK_THROWS_AS(axpy(1.0, x, GridFunction::constant(Grid::uniform(8), 0.0)), std::invalid_argument);
    CHECK(axpy(2.0, HVector({1.0, 2.0}), HVector({1.0, 1.0})) == HVector({3.0, 5.0}));
    CHECK_THROWS_AS(axpy(1.0, HVector({1.0}), HVector({1.0, 2.0})), std::invalid_argument);
  }

  TEST_CASE("grid functions reject bad input") {
    auto g = Grid::uniform(3);
    CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {1.0, NAN, 2.0}), std::invalid_argument);
    CHECK(same_grid(*Grid::uniform(3), *g));
    CHECK_FALSE(same_grid(*Grid::uniform(4), *g));
  }

  TEST_CASE("space norms and shapes") {
    const std::vector<double> x{3.0, -4.0};
    CHECK(Space::interval(2).norm(x) == 4.0);
    CHECK(Space::compact({0.0, 7.0}).norm(x) == 4.0);
    CHECK(Space::hilbert(2).norm(x) == 5.0);
    CHECK_FALSE(Space::hilbert(2).has_grid());
    CHECK_THROWS_AS(Space::hilbert(3).check(x, "x"), std::invalid_argument);
    CHECK_THROWS_AS(Space::hilbert(0), std::invalid_argument);
  }

  TEST_CASE("target values") {
    TargetValue s(2.0);
    CHECK(s.kind() == TargetValue::Kind::Scalar);
    CHECK(s.plus(0.5, TargetValue(4.0)).scalar() == 4.0);
    CHECK(s.zero_like().scalar() == 0.0);
    TargetValue v(std::vector<double>{3.0, 4.0});
    CHECK(v.norm() == 5.0);
    auto g = Grid::uniform(2);
    TargetValue f(GridFunction(g, {3.0, -4.0}));
    CHECK(f.norm() == 4.0);
    CHECK(distance(v, v.scaled(2.0)) == 5.0);
    CHECK_THROWS_AS(s.plus(1.0, v), std::invalid_argument);
    CHECK_FALSE(TargetValue(NAN).finite());
  }

  TEST_CASE("format_real round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_real(v)) == v);
  }

  TEST_CASE("csv round trip") {
    auto g = Grid::uniform(11);
    auto x = GridFunction::sample(g, [](double t) { return std::sin(3 * t) / 7; });
    std::stringstream ss;
    write_csv(ss, x);
    auto y = read_csv(ss);
    CHECK(y.grid()->is_uniform());
    CHECK(y == x);

    auto m = GridFunction(Grid::labels({0.0, 0.25, 3.0}), {1.0, 2.0, 3.0});
    std::stringstream ms;
    write_csv(ms, m);
    auto n = read_csv(ms);
    CHECK_FALSE(n.grid()->is_uniform());
    CHECK(n == m);

    std::stringstream bad("0,1\n0.5\n");
    CHECK_THROWS_AS(read_csv(bad), std::invalid_argument);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), std::invalid_argument);
  }
}
