#include <cmath>

#include "axiskit/error.hpp"
#include "axiskit/kernel_bounds.hpp"
#include "doctest.h"

using namespace axiskit;

namespace {

ScanGridSpec small_grid() {
  ScanGridSpec g;
  g.r_min = 2.0;
  g.r_max = 200.0;
  g.n_r = 3;
  g.n_ratio = 9;
  g.n_zeta = 5;
  return g;
}

}  // namespace

TEST_SUITE("kernel_bounds") {
  TEST_CASE("regime thresholds") {
    CHECK(radial_regime(8.0, 1.99) == RadialRegime::inner);
    CHECK(radial_regime(8.0, 2.0) == RadialRegime::near);
    CHECK(radial_regime(8.0, 31.9) == RadialRegime::near);
    CHECK(radial_regime(8.0, 32.0) == RadialRegime::outer);
    CHECK(alpha_admissible(EnvelopeKind::gamma1, 3.0, RadialRegime::outer));
    CHECK_FALSE(alpha_admissible(EnvelopeKind::gamma1, 1.5, RadialRegime::near));
    CHECK_FALSE(alpha_admissible(EnvelopeKind::gamma23, 1.5, RadialRegime::inner));
  }

  TEST_CASE("envelope examples") {
    CHECK(envelope_value({EnvelopeKind::gamma23, 0.0}, 2.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(envelope_value({EnvelopeKind::gamma1, 3.0}, 1.0, 10.0, 5.0) == doctest::Approx(0.005).epsilon(1e-14));
    CHECK_THROWS_AS(envelope_value({EnvelopeKind::gamma1, 2.0}, 1.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(envelope_value({EnvelopeKind::gamma23, 0.5}, 3.0, 3.0, 0.0), DomainError);
  }

  TEST_CASE("envelope decreases in alpha when max{r, rho} >= dist") {
    double prev = envelope_value({EnvelopeKind::gamma23, 0.0}, 10.0, 12.0, 1.0);
    for (double a = 0.1; a <= 1.0 + 1e-12; a += 0.1) {
      const double v = envelope_value({EnvelopeKind::gamma23, a}, 10.0, 12.0, 1.0);
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("crude bounds") {
    const CrudeBounds c = crude_bounds(1.0, 1.0, 1.0);
    CHECK(c.gamma23 == doctest::Approx(2.0));
    CHECK(c.gamma1 == doctest::Approx(1.0));
    CHECK(crude_bounds(3.0, 1.0, 0.0).gamma1 == 0.0);
    const KernelTriple t = kernel_triple(1.0, 1.0, 1.0);
    CHECK(std::abs(t.gamma2) <= c.gamma23);
    CHECK(std::abs(t.gamma3) <= c.gamma23);
    CHECK(std::abs(t.gamma1) <= c.gamma1);
    CHECK_THROWS_AS(crude_bounds(2.0, 2.0, 0.0), DomainError);
  }

  TEST_CASE("grid construction and refinement") {
    const ScanGridSpec g = small_grid();
    const auto pts = make_scan_grid(g);
    CHECK(pts.size() == g.size());
    const ScanGridSpec f = g.refined();
    CHECK(f.n_r == 5);
    CHECK(f.n_ratio == 17);
    CHECK(f.n_zeta == 9);
    CHECK(f.size() > 3 * g.size());
    for (const GridPoint& p : pts) CHECK(p.r >= 2.0);
    ScanGridSpec bad = g;
    bad.r_max = 1.0;
    CHECK_THROWS_AS(make_scan_grid(bad), DomainError);
  }

  TEST_CASE("a degenerate grid reports its own point") {
    ScanGridSpec g;
    g.r_min = g.r_max = 2.0;
    g.n_r = 1;
    g.ratio_min = g.ratio_max = 3.0;
    g.n_ratio = 1;
    g.extra_ratios.clear();
    g.zeta_ratio_min = g.zeta_ratio_max = 0.5;
    g.n_zeta = 1;
    ScanOptions opt;
    opt.refine = false;
    const ScanReport rep = bound_scan(EnvelopeKind::gamma23, 0.5, g, opt);
    REQUIRE(rep.points.size() == 2);  // zeta = +-1
    const KernelTriple t = kernel_triple(2.0, 6.0, 1.0);
    const double ratio = (std::abs(t.gamma2) + std::abs(t.gamma3)) / envelope_value({EnvelopeKind::gamma23, 0.5}, 2.0, 6.0, 1.0);
    CHECK(rep.sup == doctest::Approx(ratio).epsilon(1e-9));
    CHECK(rep.points[0].ratio == doctest::Approx(rep.points[1].ratio).epsilon(1e-10));
  }

  TEST_CASE("small scans: K <= 1 geometry, crude domination, stability") {
    for (double alpha : {0.0, 1.0}) {
      const ScanReport rep = bound_scan(EnvelopeKind::gamma23, alpha, small_grid());
      CHECK(rep.failures.empty());
      CHECK(rep.small_k_violations == 0);
      CHECK(rep.crude_violations == 0);
      CHECK(std::isfinite(rep.sup));
      CHECK(rep.cells.size() == 6);
      for (const ScanPoint& p : rep.points) CHECK(p.ratio <= rep.sup);
    }
    const ScanReport g1 = bound_scan(EnvelopeKind::gamma1, 3.0, small_grid());
    CHECK(g1.excluded_regime > 0);
    for (const ScanPoint& p : g1.points) CHECK(p.regime != RadialRegime::near);
    CHECK(std::isfinite(g1.sup));
    CHECK_THROWS_AS(bound_scan(EnvelopeKind::gamma23, 2.0, small_grid()), DomainError);
  }

  TEST_CASE("scans are independent of the worker count") {
    ScanOptions one, four;
    one.refine = four.refine = false;
    four.workers = 4;
    const ScanReport a = bound_scan(EnvelopeKind::gamma1, 0.5, small_grid(), one);
    const ScanReport b = bound_scan(EnvelopeKind::gamma1, 0.5, small_grid(), four);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].ratio == b.points[i].ratio);
    CHECK(a.sup == b.sup);
  }
}
