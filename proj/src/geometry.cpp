#include "axiskit/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "axiskit/error.hpp"

namespace axiskit {

void validate(const MeridianPoint& p) {
  if (!std::isfinite(p.r) || !std::isfinite(p.z)) throw DomainError("meridian point has non-finite coordinates");
  if (p.r < 0.0) throw DomainError("meridian point has r < 0");
}

// ------------------------------------------------------------------ Profile

Profile::Profile() = default;

Profile Profile::from_values(ValueFn f) {
  Profile p;
  p.zero_ = false;
  p.value_ = std::move(f);
  return p;
}

Profile Profile::from_jets(ValueFn value, JetFn jet) {
  Profile p;
  p.zero_ = false;
  p.value_ = std::move(value);
  p.jet_ = std::move(jet);
  return p;
}

Jet<2> Profile::jet(double r, double z) const {
  if (zero_) return Jet<2>(0.0);
  if (!jet_) throw DomainError("profile has no analytic derivatives");
  return jet_(r, z);
}

Profile Profile::scaled(double a) const {
  if (zero_ || a == 0.0) return Profile();
  ValueFn v = [f = value_, a](double r, double z) { return a * f(r, z); };
  if (!jet_) return from_values(std::move(v));
  return from_jets(std::move(v), [j = jet_, a](double r, double z) { return Jet<2>(a) * j(r, z); });
}

Profile operator+(const Profile& a, const Profile& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  Profile::ValueFn v = [fa = a.value_, fb = b.value_](double r, double z) { return fa(r, z) + fb(r, z); };
  if (!a.jet_ || !b.jet_) return Profile::from_values(std::move(v));
  return Profile::from_jets(std::move(v),
                            [ja = a.jet_, jb = b.jet_](double r, double z) { return ja(r, z) + jb(r, z); });
}

// --------------------------------------------------------- envelope, field

double AxialEnvelope::extent(double threshold) const {
  if (kind == Kind::compact) return width;
  return width * std::sqrt(std::log(1.0 / std::clamp(threshold, 1e-300, 1.0)));
}

std::string AxialEnvelope::describe() const {
  std::ostringstream os;
  os << (kind == Kind::gaussian ? "gaussian" : "compact") << "(" << width << ")";
  return os.str();
}

VorticityField VorticityField::combine(double a, const VorticityField& other, double b) const {
  VorticityField out;
  out.w_r = w_r.scaled(a) + other.w_r.scaled(b);
  out.w_theta = w_theta.scaled(a) + other.w_theta.scaled(b);
  out.w_z = w_z.scaled(a) + other.w_z.scaled(b);
  out.axial_envelope = axial_envelope;
  if (support && other.support) {
    out.support = SupportBox{std::min(support->r_min, other.support->r_min),
                             std::max(support->r_max, other.support->r_max),
                             std::min(support->z_min, other.support->z_min),
                             std::max(support->z_max, other.support->z_max)};
  }
  if (majorant && other.majorant && majorant->envelope.kind == other.majorant->envelope.kind &&
      majorant->envelope.width == other.majorant->envelope.width) {
    out.majorant = Majorant{std::abs(a) * majorant->amplitude + std::abs(b) * other.majorant->amplitude,
                            std::min(majorant->beta, other.majorant->beta), majorant->envelope};
  }
  if (decay_beta && other.decay_beta) out.decay_beta = std::min(*decay_beta, *other.decay_beta);
  return out;
}

// ---------------------------------------------------------------- operators

namespace {

// Value and the first/second partials needed by the operators.
struct Local {
  double v = 0.0, r = 0.0, z = 0.0, rr = 0.0, zz = 0.0;
};

Local exact(const Profile& f, double r, double z) {
  const Jet<2> j = f.jet(r, z);
  return {j.value(), j.d_r(), j.d_z(), j.d_rr(), j.d_zz()};
}

Local central(const Profile& f, double r, double z, double h) {
  if (f.is_zero()) return {};
  const double c = f(r, z);
  const double rp = f(r + h, z), rm = f(r - h, z);
  const double zp = f(r, z + h), zm = f(r, z - h);
  return {c, (rp - rm) / (2.0 * h), (zp - zm) / (2.0 * h), (rp - 2.0 * c + rm) / (h * h),
          (zp - 2.0 * c + zm) / (h * h)};
}

void check_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("finite-difference step must be positive");
}

}  // namespace

Triple curl_axisym(const AxisymField& field, const MeridianPoint& p, double h) {
  validate(p);
  if (field.has_derivatives()) {
    const Local ur = exact(field.u_r, p.r, p.z);
    const Local ut = exact(field.u_theta, p.r, p.z);
    const Local uz = exact(field.u_z, p.r, p.z);
    // On the axis u_theta vanishes, so d_r(r u_theta)/r -> 2 d_r u_theta.
    const double wz = p.r == 0.0 ? 2.0 * ut.r : ut.v / p.r + ut.r;
    return {-ut.z, ur.z - uz.r, wz};
  }
  check_step(h);
  if (!(p.r > h)) throw DomainError("curl_axisym: r <= h needs analytic derivatives");
  const Local ur = central(field.u_r, p.r, p.z, h);
  const Local ut = central(field.u_theta, p.r, p.z, h);
  const Local uz = central(field.u_z, p.r, p.z, h);
  const double rut_p = (p.r + h) * field.u_theta(p.r + h, p.z);
  const double rut_m = (p.r - h) * field.u_theta(p.r - h, p.z);
  return {-ut.z, ur.z - uz.r, (rut_p - rut_m) / (2.0 * h * p.r)};
}

double divergence_axisym(const AxisymField& field, const MeridianPoint& p, double h) {
  validate(p);
  if (field.has_derivatives()) {
    const Local ur = exact(field.u_r, p.r, p.z);
    const Local uz = exact(field.u_z, p.r, p.z);
    // On the axis u_r vanishes, so u_r / r -> d_r u_r.
    const double radial = p.r == 0.0 ? 2.0 * ur.r : ur.v / p.r + ur.r;
    return radial + uz.z;
  }
  check_step(h);
  if (!(p.r > h)) throw DomainError("divergence_axisym: r <= h needs analytic derivatives");
  const double rur_p = (p.r + h) * field.u_r(p.r + h, p.z);
  const double rur_m = (p.r - h) * field.u_r(p.r - h, p.z);
  const double duz = (field.u_z(p.r, p.z + h) - field.u_z(p.r, p.z - h)) / (2.0 * h);
  return (rur_p - rur_m) / (2.0 * h * p.r) + duz;
}

Triple ns_residual(const AxisymField& field, const MeridianPoint& p, double h) {
  validate(p);
  if (!field.pressure) throw IncompleteFieldError("ns_residual: field has no pressure profile");
  if (p.r == 0.0) throw DomainError("ns_residual: undefined on the axis");
  const bool analytic = field.has_derivatives() && field.pressure->has_derivatives();
  if (!analytic) {
    check_step(h);
    if (!(p.r > 2.0 * h)) throw DomainError("ns_residual: r <= 2h needs analytic derivatives");
  }
  auto get = [&](const Profile& f) { return analytic ? exact(f, p.r, p.z) : central(f, p.r, p.z, h); };
  const Local ur = get(field.u_r), ut = get(field.u_theta), uz = get(field.u_z), pr = get(*field.pressure);
  const double r = p.r;
  auto transport = [&](const Local& f) { return ur.v * f.r + uz.v * f.z; };
  auto lap0 = [&](const Local& f) { return f.rr + f.r / r + f.zz; };
  return {transport(ur) - lap0(ur) + ur.v / (r * r) - ut.v * ut.v / r + pr.r,
          transport(ut) - lap0(ut) + ut.v / (r * r) + ur.v * ut.v / r,
          transport(uz) - lap0(uz) + pr.z};
}

// ---------------------------------------------------------------- factories

void check_stream_support(const SupportBox& support) {
  if (!(support.r_min > 0.0)) throw DomainError("stream function support must stay away from the axis (r_min > 0)");
  if (!(support.r_max > support.r_min) || !(support.z_max > support.z_min))
    throw DomainError("stream function support box is empty");
}

AxisymField bump_stream_field(double rc, double zc, double radius, double amplitude) {
  if (!(radius > 0.0) || !(rc - radius > 0.0)) throw DomainError("bump must have positive radius and clear the axis");
  const double inv = 1.0 / (radius * radius);
  auto psi = [=](auto r, auto z) {
    using T = decltype(r);
    const T q = ((r - rc) * (r - rc) + (z - zc) * (z - zc)) * T(inv);
    return T(amplitude) * smooth_bump(q);
  };
  return stream_function_field(psi, SupportBox{rc - radius, rc + radius, zc - radius, zc + radius});
}

AxisymField bump_swirl_field(double rc, double zc, double radius, double amplitude) {
  if (!(radius > 0.0) || !(rc - radius > 0.0)) throw DomainError("bump must have positive radius and clear the axis");
  const double inv = 1.0 / (radius * radius);
  AxisymField f;
  f.u_theta = Profile::analytic([=](auto r, auto z) {
    using T = decltype(r);
    const T q = ((r - rc) * (r - rc) + (z - zc) * (z - zc)) * T(inv);
    return T(amplitude) * r * smooth_bump(q);
  });
  return f;
}

VorticityField power_law_vorticity(double beta, VorticityComponent component, const AxialEnvelope& envelope) {
  if (!(beta > 1.0) || !std::isfinite(beta)) throw DomainError("power_law_vorticity: beta must exceed 1");
  if (!(envelope.width > 0.0)) throw DomainError("power_law_vorticity: envelope width must be positive");
  const Profile w = Profile::analytic([beta, envelope](auto rho, auto k) {
    using T = decltype(rho);
    using std::pow;
    return pow(T(1.0) + rho, -beta) * envelope(k);
  });
  VorticityField out;
  if (component == VorticityComponent::theta) {
    out.w_theta = w;
  } else {
    out.w_r = w;
    out.w_z = w;
  }
  out.decay_beta = beta;
  out.axial_envelope = envelope;
  out.majorant = Majorant{1.0, beta, envelope};
  return out;
}

VorticityField vorticity_of(const AxisymField& field, const SupportBox& support) {
  if (!field.has_derivatives()) throw DomainError("vorticity_of needs a field with analytic derivatives");
  auto component = [field, support](int which) {
    return Profile::from_values([field, support, which](double r, double z) {
      if (!support.contains(r, z)) return 0.0;
      const Triple w = curl_axisym(field, MeridianPoint{r, z}, 0.0);
      return which == 0 ? w.r : (which == 1 ? w.theta : w.z);
    });
  };
  VorticityField out;
  if (!field.u_theta.is_zero()) {
    out.w_r = component(0);
    out.w_z = component(2);
  }
  if (!field.u_r.is_zero() || !field.u_z.is_zero()) out.w_theta = component(1);
  out.axial_envelope = AxialEnvelope{AxialEnvelope::Kind::compact,
                                     std::max(std::abs(support.z_min), std::abs(support.z_max))};
  out.support = support;
  return out;
}

// ------------------------------------------------------------------ cutoff

namespace {

// ramp(t) = 1 - S(2t - 1) on [1/2, 1], S(x) = 10x^3 - 15x^4 + 6x^5.
struct RampValue {
  double v, d1, d2;  // value and derivatives with respect to t
};

RampValue ramp(double t) {
  if (t <= 0.5) return {1.0, 0.0, 0.0};
  if (t >= 1.0) return {0.0, 0.0, 0.0};
  const double x = 2.0 * t - 1.0;
  const double s = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  const double ds = 30.0 * x * x * (1.0 - x) * (1.0 - x);
  const double dds = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
  return {1.0 - s, -2.0 * ds, -4.0 * dds};
}

}  // namespace

CutoffPhi::CutoffPhi(double R) : R_(R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("cutoff scale R must be positive");
}

double CutoffPhi::value(double r, double z) const { return ramp(r / R_).v * ramp(std::abs(z) / R_).v; }

std::pair<double, double> CutoffPhi::grad(double r, double z) const {
  const RampValue a = ramp(r / R_), b = ramp(std::abs(z) / R_);
  const double sz = z < 0.0 ? -1.0 : 1.0;
  return {a.d1 / R_ * b.v, a.v * sz * b.d1 / R_};
}

double CutoffPhi::grad_norm(double r, double z) const {
  const auto [gr, gz] = grad(r, z);
  return std::hypot(gr, gz);
}

double CutoffPhi::hess_norm(double r, double z) const {
  const RampValue a = ramp(r / R_), b = ramp(std::abs(z) / R_);
  const double sz = z < 0.0 ? -1.0 : 1.0;
  const double R2 = R_ * R_;
  const double prr = a.d2 / R2 * b.v;
  const double pzz = a.v * b.d2 / R2;
  const double prz = a.d1 * sz * b.d1 / R2;
  // phi_r / r is bounded: the ramp is flat for r < R/2.
  const double angular = r > 0.0 ? a.d1 / R_ * b.v / r : 0.0;
  return std::sqrt(prr * prr + 2.0 * prz * prz + pzz * pzz + angular * angular);
}

}  // namespace axiskit
