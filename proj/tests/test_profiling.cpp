#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scurve/errors.hpp"
#include "scurve/profiling.hpp"

using namespace scurve;

namespace {

Superposition single(double a, double m, double xc, double yc) { return {a, {{1.0, m, xc, yc}}}; }

Superposition eq7() {
  return Superposition{2.873, {{-1.673, 0.004, -8.4682, -0.0035}, {1.55, 0.0106, -11.796, 0.0}}};
}
Superposition eq8() {
  return Superposition{2.804, {{-1.655, 0.004, 8.172, -0.0365}, {1.53, 0.011, 11.5, 0.0}}};
}

}  // namespace

TEST_CASE("inflection of a single curve is its center") {
  oracle::Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.log_uniform(1e-2, 1e2);
    const double m = rng.log_uniform(1e-2, 10);
    const double xc = rng.uniform(-20, 20);
    const double yc = rng.uniform(-1, 1);
    const double w = 1.0 / (m * std::sqrt(a));
    const Range r{xc - rng.uniform(3, 20) * w, xc + rng.uniform(3, 20) * w};
    const Inflection inf = inflection(single(a, m, xc, yc), r);
    CHECK(inf.x0 == doctest::Approx(xc).epsilon(1e-9).scale(w));
    CHECK(inf.y0 == doctest::Approx(yc).epsilon(1e-9).scale(1.0 / std::sqrt(a)));
    CHECK(inf.m0 == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("curvature extrema of a single curve sit where a u^2 = 1/15") {
  // d3 = 0 <=> 15 a u^2 = 1 for one term; solve x from the cubic directly
  const double a = 4.0, m = 0.5, xc = 2.0, yc = 0.1;
  const double u = 1.0 / std::sqrt(15.0 * a);
  const double dx = (a * u * u * u + u) / m;
  const CurvatureExtrema e = curvature_extrema(single(a, m, xc, yc), Range{-50, 50});
  CHECK(e.x1 == doctest::Approx(xc - dx).epsilon(1e-10));
  CHECK(e.x2 == doctest::Approx(xc + dx).epsilon(1e-10));
}

TEST_CASE("a0 interval collapses to a on a pure two-parameter curve") {
  oracle::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const double a = rng.log_uniform(1e-3, 1e3);
    const double m = rng.log_uniform(1e-3, 10);
    const double xc = rng.uniform(-20, 20);
    const double yc = rng.uniform(-1, 1);
    const double w = 1.0 / (m * std::sqrt(a));
    const Superposition s = single(a, m, xc, yc);
    const CurveProfile p = profile(s, Range{xc - 10 * w, xc + 10 * w});
    REQUIRE(p.a_interval.has_value());
    CHECK(p.a_interval->a1 == doctest::Approx(a).epsilon(1e-8));
    CHECK(p.a_interval->a2 == doctest::Approx(a).epsilon(1e-8));
    CHECK(p.pct_nonlinearity == doctest::Approx(0.0).epsilon(1e-12).scale(1e-12));
    CHECK(p.damped_measure == doctest::Approx(m / (1 + a)).epsilon(1e-12));
  }
}

TEST_CASE("extrema outside the data range leave the interval unavailable") {
  const Superposition s = single(1.0, 1.0, 0.0, 0.0);
  const CurveProfile p = profile(s, Range{-0.1, 5.0});
  CHECK_FALSE(p.a_interval.has_value());
  CHECK(p.a_interval_reason.find("left") != std::string::npos);
  CHECK_THROWS_AS(curvature_extrema(s, Range{-0.1, 5.0}), ExtremaNotInDataError);
}

TEST_CASE("no or several inflections raise an ambiguity error listing brackets") {
  const Superposition s = single(1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(inflection(s, Range{1.0, 5.0}), AmbiguousInflectionError);
  const Superposition twin{50.0, {{1.0, 1.0, -10.0, 0.0}, {1.0, 1.0, 10.0, 1.0}}};
  try {
    inflection(twin, Range{-20, 20});
    FAIL("expected an ambiguity");
  } catch (const AmbiguousInflectionError& e) {
    CHECK(e.brackets().size() == 3);
  }
}

TEST_CASE("singular a0 interval") {
  const Superposition s = single(1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(a0_interval(s, 0.0, 0.0, 1.0, 0.0, 0.0), SingularIntervalError);
}

TEST_CASE("percentage nonlinearity and damped measure") {
  const Superposition s{1.0, {{1.0, 2.0, 0, 0}, {-0.5, 1.0, 1, 0}}};
  CHECK(pct_nonlinearity(s, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pct_nonlinearity(s, 0.0), DomainError);
  CHECK_THROWS_AS(pct_nonlinearity(s, -1.0), DomainError);
  CHECK(damped_measure(0.131, 15.52) == doctest::Approx(0.131 / 16.52));
  CHECK_THROWS_AS(damped_measure(1.0, -0.1), DomainError);
}

TEST_CASE("knee point against a grid oracle") {
  const Superposition s = single(2.0, 0.5, 0.0, 0.0);
  const KneePoint k = knee_point(s, Range{-1.0, 20.0});
  const auto [gx, gv] = oracle::grid_argmax([&](double x) { return std::fabs(d2(s, x)); }, -1.0, 20.0, 200001);
  CHECK_FALSE(k.at_endpoint);
  CHECK(k.x_k == doctest::Approx(gx).epsilon(1e-3));
  CHECK(std::fabs(d2(s, k.x_k)) >= gv * (1 - 1e-12));

  // curvature still rising at the right end
  const KneePoint edge = knee_point(s, Range{-0.2, 0.3});
  CHECK(edge.at_endpoint);

  const KneePoint flat = knee_point(Superposition{0.0, {{1.0, 2.0, 0, 0}}}, Range{-1, 1});
  CHECK(flat.flat);
}

TEST_CASE("relative permeability") {
  CurveProfile p;
  p.m0 = 4.0e-7 * M_PI;
  CHECK(p.relative_permeability() == doctest::Approx(1.0));
}

TEST_CASE("low sample counts warn") {
  ProfileOptions opt;
  opt.n_samples = 6;
  const CurveProfile p = profile(single(1.0, 1.0, 0.0, 0.0), Range{-5, 5}, opt);
  CHECK(p.a_interval.has_value());
  CHECK(p.warnings.size() == 1);
}

TEST_CASE("Mn-Zn branches: peak permeability against a dense grid") {
  // the library result must agree with a brute-force maximum of d1
  for (const auto& [sup, range] : {std::pair{eq7(), Range{-40, 20}}, std::pair{eq8(), Range{-20, 40}}}) {
    const Inflection inf = inflection(sup, range);
    const auto [gx, gv] = oracle::grid_argmax([&](double x) { return d1(sup, x); }, range.lo, range.hi, 600001);
    CHECK(inf.x0 == doctest::Approx(gx).epsilon(1e-4).scale(1.0));
    CHECK(inf.m0 == doctest::Approx(gv).epsilon(1e-9));
    const double fd = oracle::fd5([&](double x) { return eval(sup, x); }, inf.x0, 1e-2);
    CHECK(inf.m0 == doctest::Approx(fd).epsilon(1e-8));
  }
}
