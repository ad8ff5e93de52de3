#include <cmath>
#include <random>
#include <vector>

#include "axiskit/error.hpp"
#include "axiskit/norms.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axiskit;

namespace {

ScalarFn power_profile(double mu) {
  return [mu](double r, double) { return std::pow(1.0 + r, -mu); };
}

// |{(1+r)^{-mu} >= lambda} inside C_R \ C_{R/2}|: the cylinder r <= rho of
// height 2R minus its part inside C_{R/2}.
double shell_measure(double lambda, double mu, double R) {
  const double rho = std::min(std::pow(lambda, -1.0 / mu) - 1.0, R);
  if (rho <= 0.0) return 0.0;
  const double inner = std::min(rho, R / 2);
  return oracle::pi * rho * rho * 2 * R - oracle::pi * inner * inner * R;
}

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("domain volumes and membership") {
    const ScalarFn one = [](double, double) { return 1.0; };
    const CylinderDomain c1{1.0, CylinderShape::full};
    CHECK(lq_norm_cylinder(one, 1.0, c1).value == doctest::Approx(2 * oracle::pi).epsilon(1e-12));
    for (CylinderShape s : {CylinderShape::full, CylinderShape::shell, CylinderShape::ball}) {
      const CylinderDomain d{3.0, s};
      CHECK(lq_norm_cylinder(one, 1.0, d).value == doctest::Approx(d.volume()).epsilon(1e-9));
    }
    CHECK(CylinderDomain{2.0, CylinderShape::shell}.volume() == doctest::Approx(2 * oracle::pi * 8 * 7 / 8));
    CHECK(CylinderDomain{2.0, CylinderShape::ball}.volume() == doctest::Approx(4.0 / 3.0 * oracle::pi * 8));
    CHECK_THROWS_AS(CylinderDomain({0.0, CylinderShape::full}).validate(), DomainError);
    CHECK_THROWS_AS(lq_norm_cylinder(one, 0.5, c1), DomainError);
  }

  TEST_CASE("ball inside cylinder inside the larger ball") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double R = 1.3;
    const CylinderDomain ball{R, CylinderShape::ball}, cyl{R, CylinderShape::full}, big{std::sqrt(2.0) * R, CylinderShape::ball};
    int in_ball = 0, in_cyl = 0;
    for (int i = 0; i < 10000; ++i) {
      const double r = std::abs(u(gen)), z = u(gen);
      if (ball.contains(r, z)) {
        ++in_ball;
        CHECK(cyl.contains(r, z));
      }
      if (cyl.contains(r, z)) {
        ++in_cyl;
        CHECK(big.contains(r, z * (1 - 1e-15)));
      }
    }
    CHECK(in_ball > 1000);
    CHECK(in_cyl > in_ball);
  }

  TEST_CASE("Lq norm of a Gaussian against a 1-D oracle") {
    const ScalarFn f = [](double r, double z) { return std::exp(-r * r - z * z); };
    const CylinderDomain d{2.0, CylinderShape::full};
    // int_{C_2} e^{-2(r^2+z^2)} = pi (1 - e^{-8})/2 * int_{-2}^{2} e^{-2z^2}
    const double zint = oracle::gk([](double z) { return std::exp(-2 * z * z); }, -2.0, 2.0);
    const double exact = oracle::pi * (1 - std::exp(-8.0)) / 2 * zint;
    const LqNorm n = lq_norm_cylinder(f, 2.0, d);
    CHECK(n.integral == doctest::Approx(exact).epsilon(1e-10));
    CHECK(n.value == doctest::Approx(std::sqrt(exact)).epsilon(1e-10));
    CHECK_FALSE(n.divergent);
  }

  TEST_CASE("non-integrable profile is flagged divergent") {
    const ScalarFn f = [](double r, double) { return 1.0 / (r * r); };
    const LqNorm n = lq_norm_cylinder(f, 1.0, {1.0, CylinderShape::full});
    CHECK(n.divergent);
    CHECK(std::isinf(n.value));
  }

  TEST_CASE("growth exponent equals 1/q when mu q > 2") {
    const std::vector<double> radii = default_growth_radii();
    CHECK(radii.size() == 11);
    CHECK(radii.front() == 16.0);
    const double cases[][2] = {{1.0, 2.5}, {0.8, 3.0}, {2.0, 2.1}};
    for (const auto& c : cases) {
      const GrowthFit g = lq_growth(power_profile(c[0]), c[1], CylinderShape::full, radii);
      CAPTURE(c[0]);
      CHECK(g.exponent == doctest::Approx(1.0 / c[1]).epsilon(0.02 * c[1]));
      CHECK(std::abs(g.exponent - 1.0 / c[1]) <= 0.02);
      CHECK(g.local_exponents.size() == radii.size() - 1);
    }
  }

  TEST_CASE("boundary case mu q = 2 is reported as logarithmic") {
    const std::vector<double> radii = default_growth_radii();
    const GrowthFit g = lq_growth(power_profile(0.8), 2.5, CylinderShape::full, radii);
    CHECK(g.logarithmic);
    CHECK(g.correction_exponent < 0.3);
    const GrowthFit h = lq_growth(power_profile(1.0), 2.5, CylinderShape::full, radii);
    CHECK_FALSE(h.logarithmic);
    const std::vector<double> few{2.0, 4.0, 8.0};
    CHECK_THROWS_AS(lq_growth(power_profile(1.0), 2.5, CylinderShape::full, few), DomainError);
  }

  TEST_CASE("weak norm of a constant") {
    const ScalarFn f = [](double, double) { return 3.0; };
    for (CylinderShape s : {CylinderShape::full, CylinderShape::shell}) {
      const CylinderDomain d{2.0, s};
      const WeakLorentzEstimate w = weak_lorentz_norm(f, 2.5, d);
      CHECK(w.value == doctest::Approx(3.0 * std::pow(d.volume(), 1.0 / 2.5)).epsilon(1e-9));
    }
    const ScalarFn zero = [](double, double) { return 0.0; };
    CHECK(weak_lorentz_norm(zero, 2.0, {1.0, CylinderShape::full}).value == 0.0);
  }

  TEST_CASE("distribution function is non-increasing and the value dominates every level") {
    const WeakLorentzEstimate w = weak_lorentz_norm(power_profile(1.2), 3.0, {16.0, CylinderShape::full});
    REQUIRE(w.lambda_grid.size() == 200);
    for (std::size_t i = 0; i < w.lambda_grid.size(); ++i) {
      if (i) CHECK(w.monotone_envelope[i] <= w.monotone_envelope[i - 1]);
      CHECK(w.lambda_grid[i] * std::pow(w.monotone_envelope[i], 1.0 / 3.0) <= w.value);
    }
    const std::vector<double> bad{0.5, 0.2};
    CHECK_THROWS_AS(weak_lorentz_norm(power_profile(1.0), 2.0, {1.0, CylinderShape::full}, bad), DomainError);
  }

  TEST_CASE("shell weak norm against the exact distribution function") {
    const double mu = 1.0, q = 2.5;
    double prev_exact = 0.0, prev_num = 0.0;
    for (double R : {8.0, 16.0, 32.0, 64.0}) {
      const WeakLorentzEstimate w = weak_lorentz_norm(power_profile(mu), q, {R, CylinderShape::shell});
      double exact = 0.0;
      for (double lam : w.lambda_grid) exact = std::max(exact, lam * std::pow(shell_measure(lam, mu, R), 1 / q));
      CAPTURE(R);
      CHECK(w.value == doctest::Approx(exact).epsilon(5e-3));
      if (prev_exact > 0.0) CHECK(w.value / prev_num == doctest::Approx(exact / prev_exact).epsilon(1e-2));
      prev_exact = exact;
      prev_num = w.value;
    }
  }

  TEST_CASE("Chebyshev: weak norm never exceeds the Lq norm") {
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> umu(0.3, 3.0), uq(1.0, 4.0), uR(0.5, 50.0), ua(0.1, 10.0);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
      const double mu = umu(gen), q = uq(gen), R = uR(gen), a = ua(gen);
      const CylinderShape shape = static_cast<CylinderShape>(i % 3);
      const ScalarFn f = [=](double r, double) { return a * std::pow(1.0 + r, -mu); };
      const CylinderDomain d{R, shape};
      const double weak = weak_lorentz_norm(f, q, d).value;
      const double strong = lq_norm_cylinder(f, q, d).value;
      if (!(weak <= strong)) ++violations;
    }
    CHECK(violations == 0);
  }

  TEST_CASE("disk mean of ln r") {
    for (int k = -3; k <= 20; ++k) {
      const double R = std::ldexp(1.0, k);
      CHECK(disk_mean_ln(R) == doctest::Approx(std::log(R) - 0.5).epsilon(1e-13).scale(1.0));
      const BmoResult b = bmo_oscillation_ln(R, BmoDisplay::cubic);
      CHECK(std::abs(b.mean - b.mean_exact) < 1e-8);
    }
  }

  TEST_CASE("normalized oscillations of ln r are scale invariant") {
    for (BmoDisplay d : {BmoDisplay::cubic, BmoDisplay::two_thirds, BmoDisplay::twelfth}) {
      double lo = INFINITY, hi = 0.0;
      for (int k = 1; k <= 20; ++k) {
        const double v = bmo_oscillation_ln(std::ldexp(1.0, k), d).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      CHECK(hi / lo < 1.0 + 1e-6);
    }
  }

  TEST_CASE("cubic oscillation at R = 1 against independent quadrature") {
    const double split = std::exp(-0.5);
    auto g = [](double r) { return std::pow(std::abs(std::log(r) + 0.5), 3) * r; };
    boost::math::quadrature::tanh_sinh<double> ts;
    const double radial = ts.integrate(g, 0.0, split) + ts.integrate(g, split, 1.0);
    const double integral = 2.0 * 2 * oracle::pi * radial;  // z in [-1, 1]
    const BmoResult b = bmo_oscillation_ln(1.0, BmoDisplay::cubic);
    CHECK(b.integral == doctest::Approx(integral).epsilon(1e-10));
    CHECK(b.value == doctest::Approx(std::cbrt(integral)).epsilon(1e-10));
  }

  TEST_CASE("Dirichlet energy") {
    AxisymField zero;
    CHECK(dirichlet_energy(zero, {1.0, CylinderShape::full}, 0.1) == 0.0);
    AxisymField swirl;
    swirl.u_theta = Profile::analytic([](auto r, auto) { return r; });
    CHECK(dirichlet_energy(swirl, {1.0, CylinderShape::full}, 0.05) == doctest::Approx(4 * oracle::pi).epsilon(1e-12));

    const AxisymField bump = bump_stream_field(3.0, 0.0, 1.0);
    const CylinderDomain d{5.0, CylinderShape::full};
    const double e1 = dirichlet_energy(bump, d, 0.1), e2 = dirichlet_energy(bump, d, 0.05),
                 e3 = dirichlet_energy(bump, d, 0.025);
    CHECK(e3 > 0.0);
    CHECK(std::abs(e3 - e2) < std::abs(e2 - e1));
    CHECK(std::abs(e3 - e2) / e3 < 0.01);

    AxisymField fd;
    fd.u_theta = Profile::from_values([](double r, double) { return r; });
    CHECK_THROWS_AS(dirichlet_energy(fd, {1.0, CylinderShape::full}, 0.1), DomainError);
  }
}
