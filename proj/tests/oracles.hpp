#pragma once

// Independent reference computations for the tests. They share no code with
// the library's integrators: everything goes through Boost.Math quadrature
// and plain Cartesian vector algebra.

#include <array>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &err);
}

enum class Source { radial, angular, axial };

/// Velocity (u_r, u_theta, u_z) at (r, 0, z) induced, through the 3-D
/// Biot-Savart law u(x) = (1/4pi) int w(y) x (x - y) / |x - y|^3 dy, by a ring
/// of unit vorticity along e_r, e_theta or e_z at radius rho, height k
/// (per unit rho drho dk, i.e. the meridian kernel).
inline Vec3 ring_velocity(double r, double z, double rho, double k, Source s) {
  Vec3 out{};
  for (int c = 0; c < 3; ++c) {
    auto f = [&](double phi) {
      const Vec3 y{rho * std::cos(phi), rho * std::sin(phi), k};
      const Vec3 x{r, 0.0, z};
      const Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
      Vec3 w;
      switch (s) {
        case Source::radial: w = {std::cos(phi), std::sin(phi), 0.0}; break;
        case Source::angular: w = {-std::sin(phi), std::cos(phi), 0.0}; break;
        default: w = {0.0, 0.0, 1.0}; break;
      }
      const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      const Vec3 v = cross(w, d);
      // At (r, 0, z): e_r = x-axis, e_theta = y-axis.
      return v[c] / (n * n * n);
    };
    out[c] = gk(f, 0.0, pi) + gk(f, pi, 2.0 * pi);
  }
  for (double& v : out) v /= 4.0 * pi;
  return out;
}

/// -(1/4pi) int (rho - r cos phi) cos phi / D^{3/2}: a tempting alternative
/// form of the w_z -> u_theta kernel that is not the Biot-Savart kernel.
inline double cosine_weighted_gamma3(double r, double rho, double zeta) {
  auto f = [&](double phi) {
    const double D = r * r + rho * rho - 2.0 * r * rho * std::cos(phi) + zeta * zeta;
    return (rho - r * std::cos(phi)) * std::cos(phi) / std::pow(D, 1.5);
  };
  return -(gk(f, 0.0, pi) + gk(f, pi, 2.0 * pi)) / (4.0 * pi);
}

/// int_0^{pi/2} (1 + K sin^2 phi)^{-beta/2} dphi by tanh-sinh.
inline double model_integral(double K, double beta) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double phi) { return std::pow(1.0 + K * std::sin(phi) * std::sin(phi), -0.5 * beta); }, 0.0,
                      pi / 2);
}

/// Iterated adaptive integral of f(rho, k) over [a, b] x [c, d] with the
/// given interior breakpoints in each variable (singular lines).
inline double integrate_2d(const std::function<double(double, double)>& f, double a, double b, double c, double d,
                           double rho_break, double k_break, double tol = 1e-10) {
  auto inner = [&](double rho) {
    auto g = [&](double k) { return f(rho, k); };
    if (k_break > c && k_break < d) return gk(g, c, k_break, tol) + gk(g, k_break, d, tol);
    return gk(g, c, d, tol);
  };
  if (rho_break > a && rho_break < b) return gk(inner, a, rho_break, tol) + gk(inner, rho_break, b, tol);
  return gk(inner, a, b, tol);
}

}  // namespace oracle
