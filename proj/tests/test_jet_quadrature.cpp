#include <cmath>
#include <vector>

#include "axiskit/jet.hpp"
#include "axiskit/quadrature.hpp"
#include "doctest.h"

using namespace axiskit;

TEST_SUITE("jet") {
  TEST_CASE("second-order partials of a product match hand derivatives") {
    const double r = 0.7, z = -0.3;
    const auto J = [](auto a, auto b) { return sin(a) * exp(b * a); };
    const Jet<2> j = J(Jet<2>::variable_r(r), Jet<2>::variable_z(z));
    const double e = std::exp(z * r), s = std::sin(r), c = std::cos(r);
    CHECK(j.value() == doctest::Approx(s * e).epsilon(1e-14));
    CHECK(j.d_r() == doctest::Approx(c * e + s * z * e).epsilon(1e-14));
    CHECK(j.d_z() == doctest::Approx(s * r * e).epsilon(1e-14));
    CHECK(j.d_rr() == doctest::Approx(-s * e + 2 * c * z * e + s * z * z * e).epsilon(1e-13));
    CHECK(j.d_rz() == doctest::Approx(c * r * e + s * e + s * z * r * e).epsilon(1e-13));
    CHECK(j.d_zz() == doctest::Approx(s * r * r * e).epsilon(1e-13));
  }

  TEST_CASE("pow, sqrt and log agree with the chain rule") {
    const Jet<2> x = Jet<2>::variable_r(2.0);
    const Jet<2> p = pow(x, 1.5);
    CHECK(p.d_rr() == doctest::Approx(0.75 * std::pow(2.0, -0.5)));
    const Jet<2> q = sqrt(x) * log(x);
    CHECK(q.d_r() == doctest::Approx(0.5 / std::sqrt(2.0) * std::log(2.0) + 1.0 / std::sqrt(2.0)));
  }

  TEST_CASE("third-order jets lower to second-order jets of a partial") {
    const auto F = [](auto a, auto b) { return a * a * a * b * b; };
    const Jet<3> j = F(Jet<3>::variable_r(1.5), Jet<3>::variable_z(2.0));
    const Jet<2> dz = j.derivative_z();
    CHECK(dz.value() == doctest::Approx(2 * 1.5 * 1.5 * 1.5 * 2.0));
    CHECK(dz.d_rr() == doctest::Approx(6 * 1.5 * 2 * 2.0));
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("polynomials up to degree 22 are exact on one panel") {
    const quad::Result r = quad::integrate([](double x) { return std::pow(x, 22); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 23.0).epsilon(1e-14));
    CHECK(r.converged);
  }

  TEST_CASE("endpoint singularity is resolved by bisection") {
    const quad::Result r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("semi-infinite integrals") {
    const quad::Result r = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    const quad::Result s = quad::integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 2.0);
    CHECK(s.value == doctest::Approx(0.5).epsilon(1e-10));
  }

  TEST_CASE("exhausted panel budget is reported") {
    quad::Options opt;
    opt.max_panels = 4;
    opt.tol = {1e-300, 1e-15};
    const quad::Result r = quad::integrate([](double x) { return std::sin(200 * x); }, 0.0, 3.0, opt);
    CHECK_FALSE(r.converged);
  }

  TEST_CASE("breakpoints are sorted, unique and clipped") {
    const std::vector<double> bp = quad::make_breakpoints(0.0, 1.0, {0.5, -1.0, 0.5, 2.0, 0.25, 1.0});
    CHECK(bp == std::vector<double>{0.0, 0.25, 0.5, 1.0});
    std::vector<double> g;
    quad::append_geometric(g, 1.0, 0.25, 0.0, 2.0);
    const std::vector<double> gb = quad::make_breakpoints(0.0, 2.0, g);
    CHECK(std::find(gb.begin(), gb.end(), 1.0) != gb.end());
    CHECK(std::find(gb.begin(), gb.end(), 1.25) != gb.end());
    CHECK(std::find(gb.begin(), gb.end(), 0.5) != gb.end());
  }

  TEST_CASE("vector integrand: passive components ride along") {
    const std::vector<double> bp{0.0, 1.0};
    const auto res = quad::integrate_n<3>(
        [](double x) { return std::array<double, 3>{x, std::cos(x), 1.0 / std::sqrt(x)}; }, bp, {}, 2);
    CHECK(res.value[0] == doctest::Approx(0.5));
    CHECK(res.value[1] == doctest::Approx(std::sin(1.0)));
    CHECK(res.converged);
    CHECK(res.value[2] == doctest::Approx(2.0).epsilon(0.05));
  }
}
