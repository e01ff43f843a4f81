#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "scurve/errors.hpp"
#include "scurve/rootfind.hpp"

using namespace scurve;

TEST_CASE("scan finds each sign change once") {
  auto f = [](double x) { return std::sin(x); };
  const auto b = scan_sign_changes(f, 0.5, 10.0, 256);
  REQUIRE(b.size() == 3);
  CHECK(b[0].lo < M_PI);
  CHECK(b[0].hi > M_PI);
  CHECK(b[2].lo < 3 * M_PI);
  CHECK(b[2].hi > 3 * M_PI);
  CHECK(scan_sign_changes([](double) { return 1.0; }, 0, 1, 64).empty());
}

TEST_CASE("exact zero on a node gives one degenerate bracket") {
  auto f = [](double x) { return x - 0.5; };
  const auto b = scan_sign_changes(f, 0.0, 1.0, 5);
  REQUIRE(b.size() == 1);
  CHECK(b[0].degenerate());
  CHECK(b[0].lo == 0.5);
  const Root r = newton_safeguarded(f, [](double) { return 1.0; }, b[0]);
  CHECK(r.x == 0.5);
  CHECK(r.iterations == 0);
}

TEST_CASE("scan rejects non-finite values") {
  auto f = [](double x) { return x > 0.35 ? std::numeric_limits<double>::quiet_NaN() : x; };
  CHECK_THROWS_AS(scan_sign_changes(f, 0, 1, 11), ScanError);
  try {
    scan_sign_changes(f, 0, 1, 11);
  } catch (const ScanError& e) {
    CHECK(e.node() == doctest::Approx(0.4));
  }
}

TEST_CASE("safeguarded newton converges to bisection's answer") {
  oracle::Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.log_uniform(1e-3, 1e3);
    const double c = rng.uniform(-50, 50);
    auto f = [&](double u) { return a * u * u * u + u - c; };
    auto df = [&](double u) { return 3 * a * u * u + 1.0; };
    const Bracket br{std::min(0.0, c) - 1.0, std::max(0.0, c) + 1.0};
    const Root r = newton_safeguarded(f, df, br);
    CHECK(r.x == doctest::Approx(oracle::bisect(f, br.lo, br.hi)).epsilon(1e-10).scale(1e-12));
  }
}

TEST_CASE("a bad derivative falls back to bisection and still converges") {
  auto f = [](double x) { return std::atan(x - 0.3); };
  // derivative deliberately wrong by a large factor
  auto df = [](double) { return 1e-6; };
  const Root r = newton_safeguarded(f, df, Bracket{-10.0, 10.0});
  CHECK(r.x == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("orientation does not matter") {
  auto f = [](double x) { return 2.0 - x * x; };
  auto df = [](double x) { return -2.0 * x; };
  const Root r = newton_safeguarded(f, df, Bracket{0.0, 5.0});
  CHECK(r.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("iteration cap raises a convergence error with the best iterate") {
  auto f = [](double x) { return std::cbrt(x - 1.0); };
  auto df = [](double) { return 1e-9; };
  RootConfig cfg;
  cfg.max_iter = 3;
  try {
    newton_safeguarded(f, df, Bracket{-100.0, 100.0}, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_x()));
    CHECK(std::isfinite(e.best_f()));
  }
}

TEST_CASE("default grid size") {
  CHECK(default_grid_size(0) == 256);
  CHECK(default_grid_size(64) == 256);
  CHECK(default_grid_size(1000) == 4000);
}
