#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "scurve/errors.hpp"
#include "scurve/scurve.hpp"

using namespace scurve;

namespace {

struct Case {
  SCurveParams p;
  double x;
};

// Offsets spread from the inflection out to deep saturation: the scaled
// unknown v = sqrt(a) u ranges over +-[1e-3, 10].
Case random_case(oracle::Rng& rng) {
  Case c;
  c.p.a = rng.log_uniform(1e-4, 1e4);
  c.p.m = rng.sign() * rng.log_uniform(1e-4, 1e2);
  c.p.x_c = rng.uniform(-100.0, 100.0);
  c.p.y_c = rng.uniform(-2.0, 2.0);
  const double v = rng.sign() * rng.log_uniform(1e-3, 10.0);
  const double c_val = (v * v * v + v) / std::sqrt(c.p.a);
  c.x = c.p.x_c + c_val / c.p.m;
  return c;
}

double rel(double got, double want, double floor = 0.0) {
  return std::fabs(got - want) / std::max(std::fabs(want), floor);
}

}  // namespace

TEST_CASE("forward evaluation: worked examples") {
  CHECK(eval_forward({0.002, 41.0, -4.4, 13.0}, -4.4) == 13.0);
  CHECK(eval_forward({0.0, 2.0, 1.0, 3.0}, 2.0) == 5.0);

  const double y = eval_forward({1.0, 1.0, 0.0, 0.0}, 2.0);
  CHECK(y == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(y * y * y + y == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(y == doctest::Approx(oracle::bisect_cubic(1.0, 2.0)).epsilon(1e-15));
}

TEST_CASE("inverse evaluation") {
  CHECK(eval_inverse({0.002, 41.0, -4.4, 13.0}, 13.0) == -4.4);
  CHECK(eval_inverse({1.0, 1.0, 0.0, 0.0}, 1.0) == 2.0);
  CHECK_THROWS_AS(eval_inverse({1.0, 0.0, 0.0, 0.0}, 1.0), SingularSlopeError);

  oracle::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Case c = random_case(rng);
    const double back = eval_inverse(c.p, eval_forward(c.p, c.x));
    CHECK(rel(back, c.x, std::fabs(c.p.x_c) + 1e-300) < 1e-10);
  }
}

TEST_CASE("invalid parameters") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(eval_forward({nan, 1.0, 0.0, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(eval_forward({1.0, inf, 0.0, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(eval_forward({1.0, 1.0, 0.0, 0.0}, nan), DomainError);
  CHECK_THROWS_AS(eval_forward({-1.0, 1.0, 0.0, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(d2({1.0, 1.0, nan, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(radicals(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("derivatives: worked examples") {
  const SCurveParams unit{1.0, 1.0, 0.0, 0.0};
  CHECK(d1({15.52, 0.131, 47.0, 0.4}, 47.0) == 0.131);
  CHECK(d1({0.0, 3.5, 1.0, 2.0}, 123.0) == 3.5);
  CHECK(d2({0.0, 3.5, 1.0, 2.0}, 123.0) == 0.0);
  CHECK(d3({0.0, 3.5, 1.0, 2.0}, -7.0) == 0.0);

  CHECK(d1(unit, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d2(unit, 2.0) == doctest::Approx(-0.09375).epsilon(1e-14));
  CHECK(d3(unit, 0.0) == -6.0);
  CHECK(d2({2.0, 0.7, 3.0, -1.0}, 3.0) == 0.0);

  auto f1 = [&](double x) { return d1(unit, x); };
  auto f2 = [&](double x) { return d2(unit, x); };
  CHECK(d1(unit, 2.0) == doctest::Approx(oracle::fd5([&](double x) { return eval_forward(unit, x); }, 2.0, 1e-3)).epsilon(1e-9));
  CHECK(d2(unit, 2.0) == doctest::Approx(oracle::fd5(f1, 2.0, 1e-3)).epsilon(1e-9));
  CHECK(d3(unit, 2.0) == doctest::Approx(oracle::fd5(f2, 2.0, 1e-3)).epsilon(1e-6));
}

TEST_CASE("derivatives: shape properties") {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    SCurveParams p{rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e2),
                   rng.uniform(-50, 50), rng.uniform(-1, 1)};
    CHECK(d1(p, p.x_c) == p.m);
    CHECK(d2(p, p.x_c) == 0.0);
    CHECK(d3(p, p.x_c) < 0.0);
    const double delta = rng.log_uniform(1e-3, 1e2) / p.m;
    CHECK(d3(p, p.x_c + delta) == doctest::Approx(d3(p, p.x_c - delta)).epsilon(1e-9));
    // sign of d2 opposite to u m
    const double u = eval_forward(p, p.x_c + delta) - p.y_c;
    CHECK(d2(p, p.x_c + delta) * u * p.m < 0.0);
  }
}

TEST_CASE("cubic residual holds across the dynamic range") {
  oracle::Rng rng(1234);
  for (int i = 0; i < 20000; ++i) {
    const Case c = random_case(rng);
    const double y = eval_forward(c.p, c.x);
    const double u = y - c.p.y_c;
    const double cv = c.p.m * (c.x - c.p.x_c);
    REQUIRE(std::fabs(c.p.a * u * u * u + u - cv) <= 1e-12 * (1.0 + std::fabs(cv)));
  }
}

TEST_CASE("closed form agrees with the radicals and with independent solvers") {
  oracle::Rng rng(99);
  for (int i = 0; i < 20000; ++i) {
    const Case c = random_case(rng);
    const double u = eval_forward(c.p, c.x) - c.p.y_c;
    const Radicals r = radicals(c.p.a, c.p.m, c.x - c.p.x_c);
    REQUIRE(rel(r.s1 + r.s2, u) < 1e-10);
    const double cv = c.p.m * (c.x - c.p.x_c);
    REQUIRE(rel(oracle::sinh_cubic(c.p.a, cv), u) < 1e-10);
    REQUIRE(rel(oracle::bisect_cubic(c.p.a, cv), u) < 1e-11);
  }
}

TEST_CASE("extreme a stays finite and accurate") {
  // a far below where 27/a^3 overflows
  const SCurveParams tiny{1e-200, 2.0, 1.0, 0.5};
  CHECK(eval_forward(tiny, 3.0) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(d1(tiny, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  const SCurveParams subnormal{4.9e-324, 1.0, 0.0, 0.0};
  CHECK(eval_forward(subnormal, 7.0) == 7.0);

  const SCurveParams huge{1e200, 1.0, 0.0, 0.0};
  const double y = eval_forward(huge, 1.0);
  CHECK(std::isfinite(y));
  CHECK(y == doctest::Approx(std::cbrt(1e-200)).epsilon(1e-12));

  // a c^2 spanning many decades against bisection
  for (double a : {1e-12, 1e-6, 1.0, 1e6, 1e12}) {
    for (double c : {-1e6, -1.0, 1e-9, 1.0, 1e6}) {
      CHECK(rel(solve_cubic(a, c), oracle::bisect_cubic(a, c)) < 1e-13);
    }
  }
}

TEST_CASE("monotone, odd about the inflection, saturating") {
  oracle::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    SCurveParams p{rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e1), rng.uniform(-10, 10),
                   rng.uniform(-1, 1)};
    double prev = eval_forward(p, p.x_c - 100.0);
    for (int k = 1; k <= 200; ++k) {
      const double x = p.x_c - 100.0 + k;
      const double y = eval_forward(p, x);
      REQUIRE(y > prev);
      REQUIRE(d1(p, x) > 0.0);
      prev = y;
    }
    const double delta = rng.uniform(0.0, 50.0);
    CHECK(eval_forward(p, p.x_c + delta) - p.y_c ==
          doctest::Approx(-(eval_forward(p, p.x_c - delta) - p.y_c)).epsilon(1e-14));
    CHECK(d1(p, p.x_c + 1e10) < 1e-4 * p.m);
  }
  const SCurveParams falling{1.0, -2.0, 0.0, 0.0};
  CHECK(eval_forward(falling, 1.0) < eval_forward(falling, 0.0));
}

TEST_CASE("derivatives match finite differences on random curves") {
  oracle::Rng rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const Case c = random_case(rng);
    const SCurveParams p = c.p;
    // step scaled to the local width of the curve
    const double h = 1e-3 / (std::fabs(p.m) * std::sqrt(p.a)) *
                     (1.0 + 3.0 * p.a * std::pow(eval_forward(p, c.x) - p.y_c, 2));
    const Jet j = jet(p, c.x);
    const double fd1 = oracle::fd5([&](double x) { return eval_forward(p, x); }, c.x, h);
    const double fd2 = oracle::fd5([&](double x) { return d1(p, x); }, c.x, h);
    const double fd3 = oracle::fd5([&](double x) { return d2(p, x); }, c.x, h);
    const double fd4 = oracle::fd5([&](double x) { return d3(p, x); }, c.x, h);
    REQUIRE(rel(j.d1, fd1) < 1e-6);
    REQUIRE(std::fabs(j.d2 - fd2) <= 1e-6 * std::max(std::fabs(j.d2), std::fabs(j.d1) / h * 1e-3));
    REQUIRE(std::fabs(j.d3 - fd3) <= 1e-6 * std::max(std::fabs(j.d3), std::fabs(j.d2) / h * 1e-3));
    REQUIRE(std::fabs(j.d4 - fd4) <= 1e-5 * std::max(std::fabs(j.d4), std::fabs(j.d3) / h * 1e-3));
  }
}
