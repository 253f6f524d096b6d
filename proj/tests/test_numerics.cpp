#include "csusy/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace csusy;

TEST_CASE("grid spacing") {
  CHECK(make_grid(0, 1, 101).h() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(make_grid(-10, 10, 2001).h() == doctest::Approx(0.01).epsilon(1e-14));
  const Grid1D g = make_grid(-10, 10, 2001);
  CHECK(g.x(0) == -10.0);
  CHECK(g.x(2000) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("grid rejects bad bounds") {
  CHECK_THROWS_AS(make_grid(1, 0, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 0, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, NAN, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 1, 8), std::invalid_argument);
}

TEST_CASE("first derivative of x^2 is exact in the interior") {
  const Grid1D g = make_grid(-1, 1, 201);
  const auto f = sample<double>(g, [](double x) { return x * x; });
  const auto df = derivative(f, 1);
  double err = 0;
  for (Index i = 0; i < g.n; ++i) err = std::max(err, std::abs(df[i] - 2 * g.x(i)));
  CHECK(err < 1e-10);
}

TEST_CASE("stencils reproduce polynomials up to degree 4") {
  const Grid1D g = make_grid(-1, 1, 101);
  const auto f = sample<double>(g, [](double x) { return 1 - 2 * x + 3 * x * x - x * x * x + 0.5 * x * x * x * x; });
  const auto d1 = derivative(f, 1);
  const auto d2 = derivative(f, 2);
  const IndexRange in{2, g.n - 2};
  double e1 = 0, e2 = 0;
  for (Index i = in.begin; i < in.end; ++i) {
    const double x = g.x(i);
    e1 = std::max(e1, std::abs(d1[i] - (-2 + 6 * x - 3 * x * x + 2 * x * x * x)));
    e2 = std::max(e2, std::abs(d2[i] - (6 - 6 * x + 6 * x * x)));
  }
  CHECK(e1 < 1e-10);
  CHECK(e2 < 1e-8);  // 1/h^2 amplifies roundoff
}

TEST_CASE("second derivative of sin at 0 and first derivative of exp(2x)") {
  const Grid1D g = make_grid(-1, 1, 201);
  const Index mid = 100;
  CHECK(std::abs(derivative(sample<double>(g, [](double x) { return std::sin(x); }), 2)[mid]) < 1e-8);
  const double d = derivative(sample<double>(g, [](double x) { return std::exp(2 * x); }), 1)[mid];
  CHECK(std::abs(d - 2.0) < 1e-7);
}

TEST_CASE("derivative is fourth order at the boundary stencils too") {
  auto err = [](Index n) {
    const Grid1D g = make_grid(0, 1, n);
    const auto d = derivative(sample<double>(g, [](double x) { return std::exp(x); }), 1);
    double e = 0;
    for (Index i = 0; i < g.n; ++i) e = std::max(e, std::abs(d[i] - std::exp(g.x(i))));
    return e;
  };
  CHECK(err(101) / err(201) > 12.0);
}

TEST_CASE("sixth-order derivative") {
  auto err = [](Index n) {
    const Grid1D g = make_grid(-2, 2, n);
    const auto d = derivative6(sample<double>(g, [](double x) { return std::sin(2 * x); }));
    double e = 0;
    for (Index i = 3; i < g.n - 3; ++i) e = std::max(e, std::abs(d[i] - 2 * std::cos(2 * g.x(i))));
    return e;
  };
  CHECK(err(101) < 1e-8);
  CHECK(err(101) / err(201) > 48.0);
  const Grid1D g = make_grid(-1, 1, 41);
  const auto p = sample<double>(g, [](double x) { return x * x * x * x * x * x; });
  const auto d = derivative6(p);
  for (Index i = 3; i < g.n - 3; ++i) CHECK(d[i] == doctest::Approx(6 * std::pow(g.x(i), 5)).epsilon(1e-9));
}

TEST_CASE("derivative rejects bad order") {
  const auto f = sample<double>(make_grid(0, 1, 32), [](double x) { return x; });
  CHECK_THROWS_AS(derivative(f, 3), std::invalid_argument);
  CHECK_THROWS_AS(derivative(f, 0), std::invalid_argument);
}

TEST_CASE("integration") {
  CHECK(integrate(sample<double>(make_grid(0, 1, 101), [](double) { return 1.0; })) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(integrate(sample<double>(make_grid(0, std::numbers::pi, 2001), [](double x) { return std::sin(x); })) - 2) < 1e-8);
  CHECK(std::abs(integrate(sample<double>(make_grid(-1, 1, 2001), [](double x) { return x * x * x; }))) < 1e-12);
  // even point count takes the 3/8 tail
  CHECK(std::abs(integrate(sample<double>(make_grid(0, std::numbers::pi, 2000), [](double x) { return std::sin(x); })) - 2) < 1e-8);
  const auto z = integrate(sample<Complex>(make_grid(0, 1, 101), [](double x) { return Complex(x, 2 * x); }));
  CHECK(std::abs(z - Complex(0.5, 1.0)) < 1e-14);
}

TEST_CASE("integral of a derivative is the boundary difference") {
  for (auto f : {+[](double x) { return std::exp(-x * x) * std::cos(3 * x); }, +[](double x) { return std::tanh(x); }}) {
    const Grid1D g = make_grid(-2, 3, 1001);
    const auto s = sample<double>(g, f);
    const double lhs = integrate(derivative(s, 1));
    const double rhs = f(3) - f(-2);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("zero finder") {
  {
    const Grid1D g = make_grid(-2, 2, 401);
    const auto z = find_real_zeros(sample<double>(g, [](double x) { return x * x - 1; }));
    REQUIRE(z.size() == 2);
    CHECK(std::abs(z[0] + 1) < g.h());
    CHECK(std::abs(z[1] - 1) < g.h());
  }
  {
    const Grid1D g = make_grid(0, 2 * std::numbers::pi, 1000);
    const auto z = find_real_zeros(sample<double>(g, [](double x) { return std::cos(x); }));
    REQUIRE(z.size() == 2);
    CHECK(std::abs(z[0] - std::numbers::pi / 2) < g.h());
    CHECK(std::abs(z[1] - 3 * std::numbers::pi / 2) < g.h());
  }
  CHECK(find_real_zeros(sample<double>(make_grid(0, 1, 50), [](double) { return 1.0; })).empty());
}

TEST_CASE("zero finder output is sorted and separated by h/2") {
  const Grid1D g = make_grid(0, 20, 801);
  const auto z = find_real_zeros(sample<double>(g, [](double x) { return std::sin(x * x / 4); }));
  REQUIRE(z.size() > 5);
  for (std::size_t k = 1; k < z.size(); ++k) CHECK(z[k] - z[k - 1] >= g.h() / 2);
  // an exact grid zero is reported once
  const auto e = find_real_zeros(sample<double>(make_grid(-1, 1, 21), [](double x) { return std::round(x * 10) / 10; }));
  CHECK(e.size() == 1);
}
