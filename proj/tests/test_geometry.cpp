#include <cmath>
#include <random>

#include "axiskit/error.hpp"
#include "axiskit/geometry.hpp"
#include "doctest.h"

using namespace axiskit;

namespace {

// u_theta = r exp(-r^2 - z^2): w_r = 2 z r e, w_z = (2 - 2 r^2) e.
AxisymField gaussian_swirl(bool analytic) {
  AxisymField f;
  if (analytic)
    f.u_theta = Profile::analytic([](auto r, auto z) { return r * exp(-(r * r) - z * z); });
  else
    f.u_theta = Profile::from_values([](double r, double z) { return r * std::exp(-r * r - z * z); });
  return f;
}

AxisymField fd_field() {
  AxisymField f;
  f.u_r = Profile::from_values([](double r, double z) { return std::sin(r) * std::cos(z); });
  f.u_theta = Profile::from_values([](double r, double z) { return r * std::exp(-r * r - z); });
  f.u_z = Profile::from_values([](double r, double z) { return std::cos(r * z); });
  f.pressure = Profile::from_values([](double r, double z) { return r * r * z; });
  return f;
}

AxisymField analytic_twin() {
  AxisymField f;
  f.u_r = Profile::analytic([](auto r, auto z) { return sin(r) * cos(z); });
  f.u_theta = Profile::analytic([](auto r, auto z) { return r * exp(-(r * r) - z); });
  f.u_z = Profile::analytic([](auto r, auto z) { return cos(r * z); });
  f.pressure = Profile::analytic([](auto r, auto z) { return r * r * z; });
  return f;
}

double dist(const Triple& a, const Triple& b) {
  return std::sqrt((a.r - b.r) * (a.r - b.r) + (a.theta - b.theta) * (a.theta - b.theta) +
                   (a.z - b.z) * (a.z - b.z));
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("curl of a Gaussian swirl matches hand differentiation") {
    for (bool analytic : {true, false}) {
      const AxisymField f = gaussian_swirl(analytic);
      const Triple w = curl_axisym(f, {1.0, 0.0}, 1e-3);
      CHECK(std::abs(w.r) < 1e-9);
      CHECK(std::abs(w.theta) < 1e-12);
      CHECK(std::abs(w.z) < 1e-6);
      const double r = 0.8, z = 0.4, e = std::exp(-r * r - z * z);
      const Triple v = curl_axisym(f, {r, z}, 1e-3);
      CHECK(v.r == doctest::Approx(2 * z * r * e).epsilon(analytic ? 1e-14 : 1e-5));
      CHECK(v.z == doctest::Approx((2 - 2 * r * r) * e).epsilon(analytic ? 1e-14 : 1e-5));
    }
  }

  TEST_CASE("zero field has zero curl, divergence and residual") {
    AxisymField f;
    f.pressure = Profile::analytic([](auto r, auto) { return decltype(r)(3.0); });
    const Triple w = curl_axisym(f, {2.0, 1.0}, 0.1);
    CHECK(w.r == 0.0);
    CHECK(w.theta == 0.0);
    CHECK(w.z == 0.0);
    CHECK(divergence_axisym(f, {0.0, 1.0}, 0.1) == 0.0);
    const Triple res = ns_residual(f, {2.0, 1.0}, 0.1);
    CHECK(res.r == 0.0);
    CHECK(res.theta == 0.0);
    CHECK(res.z == 0.0);
  }

  TEST_CASE("divergence of simple linear fields") {
    AxisymField a;
    a.u_r = Profile::analytic([](auto r, auto) { return r; });
    a.u_z = Profile::analytic([](auto, auto z) { return -2.0 * z; });
    CHECK(std::abs(divergence_axisym(a, {1.7, -0.4}, 0.1)) < 1e-14);
    AxisymField b;
    b.u_r = Profile::from_values([](double, double) { return 1.0; });
    CHECK(divergence_axisym(b, {2.0, 0.0}, 1e-3) == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("finite differences refuse the axis") {
    const AxisymField f = gaussian_swirl(false);
    CHECK_THROWS_AS(curl_axisym(f, {0.05, 0.0}, 0.1), DomainError);
    CHECK_THROWS_AS(divergence_axisym(f, {0.1, 0.0}, 0.1), DomainError);
    // Analytic channel handles r = 0: w_z = 2 d_r u_theta = 2.
    const Triple w = curl_axisym(gaussian_swirl(true), {0.0, 0.0}, 0.1);
    CHECK(w.z == doctest::Approx(2.0));
  }

  TEST_CASE("stream-function fields are divergence-free at random points") {
    const AxisymField f = bump_stream_field(3.0, 0.5, 1.0, 2.0);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ur(1.9, 4.1), uz(-0.6, 1.6);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, std::abs(divergence_axisym(f, {ur(gen), uz(gen)}, 1e-3)));
    CHECK(worst < 1e-8);
  }

  TEST_CASE("stream-function bump stays inside its annulus") {
    const AxisymField f = bump_stream_field(3.0, 0.0, 1.0);
    CHECK(f.u_r(1.99, 0.3) == 0.0);
    CHECK(f.u_z(4.01, 0.0) == 0.0);
    CHECK(f.u_r(3.0, 1.01) == 0.0);
    CHECK(f.u_z(3.5, 0.0) != 0.0);
    CHECK(f.u_theta.is_zero());
    CHECK_THROWS_AS(bump_stream_field(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(check_stream_support({0.0, 2.0, -1.0, 1.0}), DomainError);
  }

  TEST_CASE("no-swirl fields have only w_theta; pure swirl has none") {
    const AxisymField s = bump_stream_field(3.0, 0.0, 1.0);
    const AxisymField t = bump_swirl_field(3.0, 0.0, 1.0);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ur(2.0, 4.0), uz(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const MeridianPoint p{ur(gen), uz(gen)};
      const Triple a = curl_axisym(s, p, 1e-3);
      CHECK(a.r == 0.0);
      CHECK(a.z == 0.0);
      const Triple b = curl_axisym(t, p, 1e-3);
      CHECK(b.theta == 0.0);
    }
  }

  TEST_CASE("rigid swirl solves the steady system") {
    const double omega = 1.7;
    AxisymField f;
    f.u_theta = Profile::analytic([=](auto r, auto) { return omega * r; });
    f.pressure = Profile::analytic([=](auto r, auto) { return 0.5 * omega * omega * r * r; });
    const Triple res = ns_residual(f, {2.5, -1.0}, 0.1);
    CHECK(std::abs(res.r) < 1e-12);
    CHECK(std::abs(res.theta) < 1e-12);
    CHECK(std::abs(res.z) < 1e-12);

    AxisymField g;
    g.u_theta = Profile::from_values([=](double r, double) { return omega * r; });
    g.pressure = Profile::from_values([=](double r, double) { return 0.5 * omega * omega * r * r; });
    const Triple fd = ns_residual(g, {2.5, -1.0}, 1e-2);
    CHECK(std::abs(fd.r) < 1e-8);
    CHECK(std::abs(fd.theta) < 1e-8);
  }

  TEST_CASE("missing pressure is an incomplete field") {
    CHECK_THROWS_AS(ns_residual(gaussian_swirl(true), {1.0, 0.0}, 0.1), IncompleteFieldError);
  }

  TEST_CASE("finite differences converge at second order") {
    const AxisymField fd = fd_field();
    const AxisymField ex = analytic_twin();
    const MeridianPoint p{1.3, 0.2};
    const double h = 0.02;
    const Triple c0 = curl_axisym(ex, p, h);
    const double e1 = dist(curl_axisym(fd, p, h), c0), e2 = dist(curl_axisym(fd, p, h / 2), c0);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.125));
    const double d0 = divergence_axisym(ex, p, h);
    const double f1 = std::abs(divergence_axisym(fd, p, h) - d0), f2 = std::abs(divergence_axisym(fd, p, h / 2) - d0);
    CHECK(f1 / f2 == doctest::Approx(4.0).epsilon(0.125));
    const Triple r0 = ns_residual(ex, p, h);
    const double g1 = dist(ns_residual(fd, p, h), r0), g2 = dist(ns_residual(fd, p, h / 2), r0);
    CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.125));
  }

  TEST_CASE("a non-solution keeps a refinement-stable residual") {
    const AxisymField ex = analytic_twin();
    const AxisymField fd = fd_field();
    const MeridianPoint p{1.3, 0.2};
    const Triple a = ns_residual(fd, p, 0.02), b = ns_residual(fd, p, 0.01);
    const Triple e = ns_residual(ex, p, 0.01);
    CHECK(std::abs(e.r) > 1e-2);
    CHECK(a.r / b.r == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(a.z / b.z == doctest::Approx(1.0).epsilon(1e-2));
  }

  TEST_CASE("power-law vorticity") {
    const VorticityField w = power_law_vorticity(3.0, VorticityComponent::theta, {});
    CHECK(w.w_theta(1.0, 0.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(w.w_r.is_zero());
    double worst = 0.0;
    for (double rho = 0.0; rho < 1e4; rho = rho * 1.3 + 0.1)
      for (double k = -5.0; k <= 5.0; k += 0.25) worst = std::max(worst, w.w_theta(rho, k) * std::pow(1 + rho, 3.0));
    CHECK(worst <= 1.0 + 1e-14);  // equality up to pow rounding
    CHECK_NOTHROW(power_law_vorticity(5.0 / 3.0 + 1e-9, VorticityComponent::theta, {}));
    CHECK_THROWS_AS(power_law_vorticity(1.0, VorticityComponent::theta, {}), DomainError);
    CHECK_THROWS_AS(power_law_vorticity(0.9, VorticityComponent::r_and_z, {}), DomainError);
    const VorticityField s = power_law_vorticity(2.0, VorticityComponent::r_and_z, {AxialEnvelope::Kind::compact, 2.0});
    CHECK(s.w_theta.is_zero());
    CHECK(s.w_z(0.0, 2.5) == 0.0);
    CHECK(s.w_r(0.0, 0.0) == doctest::Approx(1.0));
  }

  TEST_CASE("cutoff plateau, support and range") {
    for (double R : {1.0, 4.0, 1024.0}) {
      const CutoffPhi phi(R);
      CHECK(phi.value(0.5 * R, 0.5 * R) == 1.0);
      CHECK(phi.value(0.1 * R, -0.3 * R) == 1.0);
      CHECK(phi.value(1.0 * R, 0.0) == 0.0);
      CHECK(phi.value(0.2 * R, -1.2 * R) == 0.0);
      for (double t = 0.0; t <= 1.2; t += 0.01) {
        const double v = phi.value(t * R, 0.3 * t * R);
        CHECK((v >= 0.0 && v <= 1.0));
      }
    }
    CHECK_THROWS_AS(CutoffPhi(0.0), DomainError);
  }

  TEST_CASE("cutoff derivative bounds are scale invariant") {
    auto sups = [](double R) {
      const CutoffPhi phi(R);
      double g = 0.0, h = 0.0;
      for (int i = 1; i <= 200; ++i)
        for (int j = -200; j <= 200; j += 4) {
          const double r = R * i / 200.0, z = R * j / 200.0;
          g = std::max(g, phi.grad_norm(r, z));
          h = std::max(h, phi.hess_norm(r, z));
        }
      return std::pair{g * R, h * R * R};
    };
    const auto a = sups(4.0), b = sups(1024.0);
    CHECK(a.first == doctest::Approx(b.first).epsilon(1e-6));
    CHECK(a.second == doctest::Approx(b.second).epsilon(1e-6));
    CHECK(a.first > 1.0);
  }

  TEST_CASE("cutoff is continuous on a fine mesh") {
    const double R = 8.0, mesh = R / 2000.0;
    const CutoffPhi phi(R);
    double gsup = 0.0, jump = 0.0;
    for (int i = 0; i < 2400; ++i) {
      const double r = i * mesh;
      gsup = std::max(gsup, phi.grad_norm(r, 0.3 * R));
      jump = std::max(jump, std::abs(phi.value(r + mesh, 0.3 * R) - phi.value(r, 0.3 * R)));
    }
    CHECK(jump < mesh * gsup * 1.1);
  }

  TEST_CASE("gradient agrees with finite differences of the value") {
    const CutoffPhi phi(2.0);
    const double r = 1.4, z = 0.7, h = 1e-6;
    const auto [gr, gz] = phi.grad(r, z);
    CHECK(gr == doctest::Approx((phi.value(r + h, z) - phi.value(r - h, z)) / (2 * h)).epsilon(1e-6));
    CHECK(gz == doctest::Approx((phi.value(r, z + h) - phi.value(r, z - h)) / (2 * h)).epsilon(1e-6));
  }

  TEST_CASE("profile algebra keeps the analytic channel") {
    const Profile a = Profile::analytic([](auto r, auto z) { return r * z; });
    const Profile b = Profile::from_values([](double r, double) { return r; });
    CHECK(a.scaled(2.0).has_derivatives());
    CHECK((a + a).jet(1.0, 2.0).d_r() == doctest::Approx(4.0));
    CHECK_FALSE((a + b).has_derivatives());
    CHECK((a + b)(2.0, 3.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(b.jet(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(validate(MeridianPoint{-1.0, 0.0}), DomainError);
  }
}
