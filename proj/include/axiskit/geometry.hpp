#pragma once

// Meridian-plane primitives: evaluable profiles (optionally with exact
// derivatives), axisymmetric velocity and vorticity fields, the cutoff
// function phi_R and the differential operators of the steady axisymmetric
// Navier-Stokes system.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "axiskit/jet.hpp"

namespace axiskit {

struct MeridianPoint {
  double r = 0.0;
  double z = 0.0;
};

/// Throws DomainError unless r >= 0 and both coordinates are finite.
void validate(const MeridianPoint& p);

/// Cylindrical triple (r, theta, z components).
struct Triple {
  double r = 0.0;
  double theta = 0.0;
  double z = 0.0;
};

/// Scalar profile over the meridian half-plane. Profiles built from a generic
/// callable `f(T r, T z)` also carry exact derivatives up to second order
/// through Jet<2>; profiles built from plain values are differentiated by
/// finite differences.
class Profile {
 public:
  using ValueFn = std::function<double(double, double)>;
  using JetFn = std::function<Jet<2>(double, double)>;

  /// The zero profile (analytic).
  Profile();

  static Profile zero() { return Profile(); }
  static Profile from_values(ValueFn f);
  static Profile from_jets(ValueFn value, JetFn jet);

  /// `f` must be callable as f(double, double) and f(Jet<2>, Jet<2>).
  template <class F>
  static Profile analytic(F f) {
    return from_jets([f](double r, double z) { return static_cast<double>(f(r, z)); },
                     [f](double r, double z) { return Jet<2>(f(Jet<2>::variable_r(r), Jet<2>::variable_z(z))); });
  }

  double operator()(double r, double z) const { return zero_ ? 0.0 : value_(r, z); }
  double operator()(const MeridianPoint& p) const { return (*this)(p.r, p.z); }

  bool has_derivatives() const { return zero_ || static_cast<bool>(jet_); }
  bool is_zero() const { return zero_; }

  /// Second-order Taylor jet at (r, z). Throws DomainError without an
  /// analytic channel.
  Jet<2> jet(double r, double z) const;

  /// Pointwise scaling; keeps the analytic channel.
  Profile scaled(double a) const;
  /// Pointwise sum; analytic only if both operands are.
  friend Profile operator+(const Profile& a, const Profile& b);

 private:
  bool zero_ = true;
  ValueFn value_;
  JetFn jet_;
};

struct AxisymField {
  Profile u_r, u_theta, u_z;
  std::optional<Profile> pressure;
  std::optional<double> decay_mu;

  bool has_derivatives() const {
    return u_r.has_derivatives() && u_theta.has_derivatives() && u_z.has_derivatives();
  }
};

/// Axial profile eta(k) with 0 <= eta <= 1, making half-plane integrals finite.
struct AxialEnvelope {
  enum class Kind { gaussian, compact };
  Kind kind = Kind::gaussian;
  double width = 1.0;  // gaussian: exp(-(k/width)^2); compact: support |k| < width

  template <class T>
  T operator()(const T& k) const {
    const T q = k * k / (width * width);
    if (kind == Kind::gaussian) return exp(-q);
    if (value_of(q) >= 1.0) return T(0.0);
    return exp(T(1.0) - T(1.0) / (T(1.0) - q));
  }
  double operator()(double k) const {
    const double q = k * k / (width * width);
    if (kind == Kind::gaussian) return std::exp(-q);
    if (q >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - q));
  }

  /// Half-width beyond which eta < threshold (infinite never happens).
  double extent(double threshold) const;
  std::string describe() const;
};

/// Axis-aligned box in the meridian plane.
struct SupportBox {
  double r_min = 0.0, r_max = 0.0;
  double z_min = 0.0, z_max = 0.0;

  bool contains(double r, double z) const { return r >= r_min && r <= r_max && z >= z_min && z <= z_max; }
};

/// |w(rho, k)| <= amplitude (1 + rho)^{-beta} eta(k) for every component.
struct Majorant {
  double amplitude = 1.0;
  double beta = 2.0;
  AxialEnvelope envelope;
};

struct VorticityField {
  Profile w_r, w_theta, w_z;
  std::optional<double> decay_beta;
  AxialEnvelope axial_envelope;
  std::optional<SupportBox> support;   // set for compactly supported fields
  std::optional<Majorant> majorant;    // set for power-law fields

  /// Pointwise a*this + b*other. Support and majorant are merged when both
  /// operands carry them.
  VorticityField combine(double a, const VorticityField& other, double b) const;
};

/// C-infinity bump of the normalized squared distance q: exp(1 - 1/(1 - q))
/// for q < 1, zero otherwise. Equals 1 at q = 0.
template <class T>
T smooth_bump(const T& q) {
  if (value_of(q) >= 1.0) return T(0.0);
  return exp(T(1.0) - T(1.0) / (T(1.0) - q));
}
inline double smooth_bump(double q) { return q >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - q)); }

// ---------------------------------------------------------------- operators

/// (w_r, w_theta, w_z) = (-d_z u_theta, d_z u_r - d_r u_z, d_r(r u_theta)/r).
/// Exact when every velocity component has derivatives (including r = 0,
/// where w_z = 2 d_r u_theta); otherwise central differences with step h,
/// which require p.r > h.
Triple curl_axisym(const AxisymField& field, const MeridianPoint& p, double h);

/// (1/r)(d_r(r u_r) + d_z(r u_z)); axis handling as curl_axisym.
double divergence_axisym(const AxisymField& field, const MeridianPoint& p, double h);

/// Residuals of the three steady momentum equations
///   b.grad u_r     - D0 u_r     + u_r/r^2     - u_theta^2/r + d_r p
///   b.grad u_theta - D0 u_theta + u_theta/r^2 + u_r u_theta/r
///   b.grad u_z     - D0 u_z     + d_z p
/// with b.grad = u_r d_r + u_z d_z and D0 = d_rr + (1/r) d_r + d_zz.
/// Throws IncompleteFieldError without pressure. Finite differences need
/// p.r > 2h; r = 0 is always rejected.
Triple ns_residual(const AxisymField& field, const MeridianPoint& p, double h);

// ------------------------------------------------------------- factories

/// u_r = -(1/r) d_z psi, u_z = (1/r) d_r psi, u_theta = 0, with exact
/// derivatives (psi is evaluated on Jet<3>). `support` must bound the support
/// of psi away from the axis.
template <class Psi>
AxisymField stream_function_field(Psi psi, const SupportBox& support);

void check_stream_support(const SupportBox& support);

/// Stream function of a smooth bump of the given radius centred at (rc, zc):
/// psi = amplitude * smooth_bump(((r - rc)^2 + (z - zc)^2) / radius^2).
AxisymField bump_stream_field(double rc, double zc, double radius, double amplitude = 1.0);

/// Pure swirl u_theta = amplitude * r * smooth_bump(...) about (rc, zc).
AxisymField bump_swirl_field(double rc, double zc, double radius, double amplitude = 1.0);

enum class VorticityComponent { theta, r_and_z };

/// w = (1 + rho)^{-beta} eta(k) in the selected component(s). beta > 1.
VorticityField power_law_vorticity(double beta, VorticityComponent component, const AxialEnvelope& envelope);

/// Vorticity of a velocity field with exact derivatives, with the given support.
VorticityField vorticity_of(const AxisymField& field, const SupportBox& support);

// ---------------------------------------------------------------- cutoff

/// phi_R(r, z) = ramp(r/R) ramp(|z|/R), ramp = 1 on [0, 1/2], 0 on [1, inf),
/// quintic smoothstep (C^2) in between. phi_R(x) = phi_1(x/R).
class CutoffPhi {
 public:
  explicit CutoffPhi(double R);

  double R() const { return R_; }
  double value(double r, double z) const;
  /// (d_r phi, d_z phi).
  std::pair<double, double> grad(double r, double z) const;
  double grad_norm(double r, double z) const;
  /// Frobenius norm of the 3-D Hessian: phi_rr, phi_rz, phi_zz and the
  /// angular term phi_r / r.
  double hess_norm(double r, double z) const;

 private:
  double R_;
};

// -------------------------------------------------------------- template

template <class Psi>
AxisymField stream_function_field(Psi psi, const SupportBox& support) {
  check_stream_support(support);
  AxisymField f;
  // Outside the support box psi vanishes identically; skip the 1/r factor so
  // that evaluations on the axis stay finite.
  f.u_r = Profile::from_jets(
      [psi, support](double r, double z) {
        if (!support.contains(r, z)) return 0.0;
        const Jet<1> p = psi(Jet<1>::variable_r(r), Jet<1>::variable_z(z));
        return -p.d_z() / r;
      },
      [psi, support](double r, double z) {
        if (!support.contains(r, z)) return Jet<2>(0.0);
        const Jet<3> p = psi(Jet<3>::variable_r(r), Jet<3>::variable_z(z));
        return Jet<2>(-p.derivative_z()) / Jet<2>::variable_r(r);
      });
  f.u_z = Profile::from_jets(
      [psi, support](double r, double z) {
        if (!support.contains(r, z)) return 0.0;
        const Jet<1> p = psi(Jet<1>::variable_r(r), Jet<1>::variable_z(z));
        return p.d_r() / r;
      },
      [psi, support](double r, double z) {
        if (!support.contains(r, z)) return Jet<2>(0.0);
        const Jet<3> p = psi(Jet<3>::variable_r(r), Jet<3>::variable_z(z));
        return Jet<2>(p.derivative_r()) / Jet<2>::variable_r(r);
      });
  f.u_theta = Profile::zero();
  return f;
}

}  // namespace axiskit
