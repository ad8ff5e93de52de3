#include "axiskit/biot_savart.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "axiskit/error.hpp"
#include "axiskit/parallel.hpp"
#include "axiskit/rate_calculus.hpp"

namespace axiskit {

std::string to_string(VelocityComponent c) {
  switch (c) {
    case VelocityComponent::ur: return "ur";
    case VelocityComponent::uz: return "uz";
    case VelocityComponent::utheta: return "utheta";
    case VelocityComponent::b: return "b";
  }
  return "unknown";
}

double QuadratureSpec::resolved_rho_max(double r) const { return rho_max > 0.0 ? rho_max : 64.0 * std::max(1.0, r); }
double QuadratureSpec::resolved_z_max(double r) const { return z_max > 0.0 ? z_max : 64.0 * std::max(1.0, r); }

void QuadratureSpec::validate_for(double r) const {
  if (!(gamma >= 0.0 && gamma <= 1.0) || !(delta >= 0.0 && delta <= 1.0))
    throw DomainError("quadrature spec: gamma and delta must lie in [0, 1]");
  if (!(tol.abs > 0.0) || !(tol.rel >= 0.0)) throw DomainError("quadrature spec: tolerance must be positive");
  const double floor = 8.0 * std::max(1.0, r);
  if (resolved_rho_max(r) < floor || resolved_z_max(r) < floor)
    throw DomainError("quadrature spec: truncation radii must be >= 8 max(1, r) = " + std::to_string(floor));
  if (!(polar_radius > 0.0)) throw DomainError("quadrature spec: polar_radius must be positive");
  if (max_panels < 16) throw DomainError("quadrature spec: max_panels must be >= 16");
}

namespace {

using Vec2 = std::array<double, 2>;

struct Piece {
  Vec2 value{};
  Vec2 error{};
  bool converged = true;
};

struct Box {
  double ra, rb, ka, kb;
  bool empty() const { return !(rb > ra) || !(kb > ka); }
};

class Reconstructor {
 public:
  Reconstructor(const VorticityField& w, VelocityComponent comp, const MeridianPoint& p, const QuadratureSpec& spec)
      : w_(w), comp_(comp), r_(p.r), z_(p.z), spec_(spec) {
    if (comp == VelocityComponent::utheta) {
      first_ = &w.w_z;
      second_ = &w.w_r;
    } else {
      first_ = &w.w_theta;
    }
  }

  bool trivial() const {
    return first_->is_zero() && (second_ == nullptr || second_->is_zero());
  }

  Vec2 integrand(double rho, double k) const {
    if (!(rho > 0.0)) return {0.0, 0.0};
    if (w_.support && !w_.support->contains(rho, k)) return {0.0, 0.0};
    const double a = first_->is_zero() ? 0.0 : (*first_)(rho, k);
    const double b = (second_ == nullptr || second_->is_zero()) ? 0.0 : (*second_)(rho, k);
    if (a == 0.0 && b == 0.0) return {0.0, 0.0};
    const KernelTriple g = kernel_triple(r_, rho, z_ - k, spec_.kernel_tol);
    switch (comp_) {
      case VelocityComponent::ur: return {g.gamma1 * a * rho, 0.0};
      case VelocityComponent::uz: return {-g.gamma2 * a * rho, 0.0};
      default: return {g.gamma3 * a * rho, -g.gamma1 * b * rho};
    }
  }

  Box clip(Box b) const {
    if (w_.support) {
      b.ra = std::max(b.ra, w_.support->r_min);
      b.rb = std::min(b.rb, w_.support->r_max);
      b.ka = std::max(b.ka, w_.support->z_min);
      b.kb = std::min(b.kb, w_.support->z_max);
    }
    return b;
  }

  void add_axial_features(std::vector<double>& pts, double ka, double kb) const {
    const AxialEnvelope& env = w_.axial_envelope;
    for (double f : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      pts.push_back(f * env.width);
      pts.push_back(-f * env.width);
    }
    if (w_.support) {
      pts.push_back(w_.support->z_min);
      pts.push_back(w_.support->z_max);
    }
    (void)ka;
    (void)kb;
  }

  // Iterated integral over a rectangle: outer rho, inner k. `grade` is the
  // distance scale below which breakpoints grade toward (r, z).
  Piece rectangle(Box box, quad::Tolerance tol, double grade) const {
    Piece out;
    box = clip(box);
    if (box.empty()) return out;

    std::vector<double> outer_pts;
    quad::append_geometric(outer_pts, r_, std::max(grade, dist_to(r_, box.ra, box.rb)), box.ra, box.rb);
    if (w_.support) {
      outer_pts.push_back(w_.support->r_min);
      outer_pts.push_back(w_.support->r_max);
    }
    const std::vector<double> obp = quad::make_breakpoints(box.ra, box.rb, outer_pts);

    quad::Options inner_opt;
    inner_opt.tol = {tol.abs * 0.1 / std::max(1.0, box.rb - box.ra), tol.rel * 0.1};
    inner_opt.max_panels = spec_.max_panels;
    bool inner_ok = true;

    auto outer_f = [&](double rho) -> std::array<double, 4> {
      std::vector<double> pts;
      const double s = std::max(std::abs(rho - r_), 1e-3 * grade);
      quad::append_geometric(pts, z_, std::max(0.5 * s, dist_to(z_, box.ka, box.kb)), box.ka, box.kb);
      add_axial_features(pts, box.ka, box.kb);
      const std::vector<double> ibp = quad::make_breakpoints(box.ka, box.kb, pts);
      const quad::ResultN<2> in =
          quad::integrate_n<2>([&](double k) { return integrand(rho, k); }, std::span<const double>(ibp), inner_opt);
      if (!in.converged) inner_ok = false;
      return {in.value[0], in.value[1], in.error[0], in.error[1]};
    };
    quad::Options outer_opt;
    outer_opt.tol = tol;
    outer_opt.max_panels = spec_.max_panels;
    const quad::ResultN<4> res = quad::integrate_n<4>(outer_f, std::span<const double>(obp), outer_opt, 2);
    out.value = {res.value[0], res.value[1]};
    out.error = {res.error[0] + std::abs(res.value[2]), res.error[1] + std::abs(res.value[3])};
    out.converged = res.converged && inner_ok;
    return out;
  }

  // Square [r - h, r + h] x [z - h, z + h] in polar coordinates about (r, z).
  Piece polar_patch(double h, quad::Tolerance tol) const {
    Piece out;
    if (w_.support) {
      const SupportBox& s = *w_.support;
      if (r_ + h < s.r_min || r_ - h > s.r_max || z_ + h < s.z_min || z_ - h > s.z_max) return out;
    }
    std::vector<double> tbp;
    for (int i = 0; i <= 8; ++i) tbp.push_back(i * 0.25 * kPi);

    quad::Options inner_opt;
    inner_opt.tol = {tol.abs * 0.1 / (2.0 * kPi), tol.rel * 0.1};
    inner_opt.max_panels = spec_.max_panels;
    bool inner_ok = true;

    auto outer_f = [&](double theta) -> std::array<double, 4> {
      const double c = std::cos(theta), sn = std::sin(theta);
      const double smax = h / std::max(std::abs(c), std::abs(sn));
      std::vector<double> sbp{0.0};
      for (std::size_t j = spec_.near_diag_refinement; j >= 1; --j) sbp.push_back(std::ldexp(smax, -static_cast<int>(j)));
      sbp.push_back(smax);
      const quad::ResultN<2> in = quad::integrate_n<2>(
          [&](double s) {
            Vec2 v = integrand(r_ + s * c, z_ + s * sn);
            return Vec2{v[0] * s, v[1] * s};
          },
          std::span<const double>(sbp), inner_opt);
      if (!in.converged) inner_ok = false;
      return {in.value[0], in.value[1], in.error[0], in.error[1]};
    };
    quad::Options outer_opt;
    outer_opt.tol = tol;
    outer_opt.max_panels = spec_.max_panels;
    const quad::ResultN<4> res = quad::integrate_n<4>(outer_f, std::span<const double>(tbp), outer_opt, 2);
    out.value = {res.value[0], res.value[1]};
    out.error = {res.error[0] + std::abs(res.value[2]), res.error[1] + std::abs(res.value[3])};
    out.converged = res.converged && inner_ok;
    return out;
  }

  ReconstructionResult run() const {
    ReconstructionResult res;
    const double r = r_;
    const double rho_max = spec_.resolved_rho_max(r), z_max = spec_.resolved_z_max(r);
    const double half_strip = 0.5 * std::pow(r, spec_.delta);
    res.region_edges = {0.0, std::pow(r, spec_.gamma) / 8.0, r / 4.0, r - half_strip, r + half_strip, 4.0 * r, rho_max};
    if (trivial()) return res;
    res.tail_bound = tail_bound(rho_max, z_max);

    const double ka = z_ - z_max, kb = z_ + z_max;
    const double hp = std::min(half_strip, spec_.polar_radius);
    // 6 regions, I4 split into the polar patch and up to four rectangles.
    const quad::Tolerance piece_tol{spec_.tol.abs / 10.0, spec_.tol.rel};
    const auto& e = res.region_edges;

    auto accumulate = [&](std::size_t region, const Piece& p) {
      res.per_region[region] += p.value[0] + p.value[1];
      res.terms[0] += p.value[0];
      res.terms[1] += p.value[1];
      res.quad_err += p.error[0] + p.error[1];
      res.converged = res.converged && p.converged;
    };
    for (std::size_t i : {0u, 1u, 2u, 4u, 5u}) {
      const double grade = std::max(dist_to(r, e[i], e[i + 1]), hp);
      accumulate(i, rectangle({e[i], e[i + 1], ka, kb}, piece_tol, grade));
    }
    accumulate(3, polar_patch(hp, piece_tol));
    accumulate(3, rectangle({e[3], e[4], z_ + hp, kb}, piece_tol, hp));
    accumulate(3, rectangle({e[3], e[4], ka, z_ - hp}, piece_tol, hp));
    if (hp < half_strip) {
      accumulate(3, rectangle({e[3], r - hp, z_ - hp, z_ + hp}, piece_tol, hp));
      accumulate(3, rectangle({r + hp, e[4], z_ - hp, z_ + hp}, piece_tol, hp));
    }
    // Fixed summation order over regions.
    res.value = 0.0;
    for (double v : res.per_region) res.value += v;
    return res;
  }

 private:
  static double dist_to(double x, double a, double b) {
    if (x < a) return a - x;
    if (x > b) return x - b;
    return 0.0;
  }

  double crude(double rho, double k) const {
    const double zeta = z_ - k;
    const double d2 = (r_ - rho) * (r_ - rho) + zeta * zeta;
    const double d3 = d2 * std::sqrt(d2);
    switch (comp_) {
      case VelocityComponent::ur: return std::abs(zeta) / d3;
      case VelocityComponent::uz: return (rho + r_) / d3;
      default: return (rho + r_ + std::abs(zeta)) / d3;
    }
  }

  double tail_bound(double rho_max, double z_max) const {
    if (w_.support) {
      const SupportBox& s = *w_.support;
      if (s.r_max <= rho_max && s.z_min >= z_ - z_max && s.z_max <= z_ + z_max) return 0.0;
    }
    if (!w_.majorant)
      throw DomainError("reconstruction: field has neither a support inside the truncated domain nor a majorant");
    const Majorant& m = *w_.majorant;
    if (!(m.beta > 1.0)) throw DomainError("reconstruction: majorant decay beta <= 1 gives a nonintegrable tail");
    quad::Options opt;
    opt.tol = {1e-300, 1e-6};
    opt.max_panels = spec_.max_panels;
    double err = 0.0;

    // Integral over k of crude * eta on (-inf, lo] U [hi, inf), or all of R
    // when lo > hi.
    auto k_integral = [&](double rho, double lo, double hi) {
      auto f = [&](double k) { return crude(rho, k) * m.envelope(k); };
      double total = 0.0;
      const double ext = m.envelope.extent(1e-300);
      if (lo > hi) {
        // Whole line: split at the envelope support / kernel centre.
        std::vector<double> pts{z_, 0.0, -ext, ext};
        const double a = std::min({z_, -ext}), b = std::max({z_, ext});
        const std::vector<double> bp = quad::make_breakpoints(a, b, pts);
        const quad::Result mid = quad::integrate(f, std::span<const double>(bp), opt);
        const quad::Result up = quad::integrate_to_infinity(f, b, opt);
        const quad::Result down = quad::integrate_to_infinity([&](double x) { return f(-x); }, -a, opt);
        err += mid.error + up.error + down.error;
        total = mid.value + up.value + down.value;
      } else {
        const quad::Result up = quad::integrate_to_infinity(f, hi, opt);
        const quad::Result down = quad::integrate_to_infinity([&](double x) { return f(-x); }, -lo, opt);
        err += up.error + down.error;
        total = up.value + down.value;
      }
      return total;
    };
    auto weight = [&](double rho) { return m.amplitude * std::pow(1.0 + rho, -m.beta) * rho; };

    const quad::Result far = quad::integrate_to_infinity(
        [&](double rho) { return weight(rho) * k_integral(rho, 1.0, 0.0); }, rho_max, opt);
    std::vector<double> pts;
    quad::append_geometric(pts, r_, 1.0, 0.0, rho_max);
    const std::vector<double> bp = quad::make_breakpoints(0.0, rho_max, pts);
    const quad::Result axial = quad::integrate(
        [&](double rho) { return weight(rho) * k_integral(rho, z_ - z_max, z_ + z_max); }, std::span<const double>(bp),
        opt);
    return far.value + far.error + axial.value + axial.error + err;
  }

  const VorticityField& w_;
  VelocityComponent comp_;
  double r_, z_;
  const QuadratureSpec& spec_;
  const Profile* first_ = nullptr;
  const Profile* second_ = nullptr;
};

ReconstructionResult reconstruct_single(VelocityComponent c, const VorticityField& w, const MeridianPoint& p,
                                        const QuadratureSpec& spec) {
  validate(p);
  if (!(p.r > 1.0)) throw DomainError("reconstruction needs r > 1 (got r = " + std::to_string(p.r) + ")");
  spec.validate_for(p.r);
  return Reconstructor(w, c, p, spec).run();
}

}  // namespace

ReconstructionResult reconstruct_ur(const VorticityField& w, const MeridianPoint& p, const QuadratureSpec& spec) {
  return reconstruct_single(VelocityComponent::ur, w, p, spec);
}

ReconstructionResult reconstruct_uz(const VorticityField& w, const MeridianPoint& p, const QuadratureSpec& spec) {
  return reconstruct_single(VelocityComponent::uz, w, p, spec);
}

ReconstructionResult reconstruct_utheta(const VorticityField& w, const MeridianPoint& p, const QuadratureSpec& spec) {
  return reconstruct_single(VelocityComponent::utheta, w, p, spec);
}

ReconstructionResult reconstruct(VelocityComponent c, const VorticityField& w, const MeridianPoint& p,
                                 const QuadratureSpec& spec) {
  if (c != VelocityComponent::b) return reconstruct_single(c, w, p, spec);
  const ReconstructionResult ur = reconstruct_ur(w, p, spec);
  const ReconstructionResult uz = reconstruct_uz(w, p, spec);
  ReconstructionResult res;
  res.value = std::abs(ur.value) + std::abs(uz.value);
  for (std::size_t i = 0; i < 6; ++i) res.per_region[i] = std::abs(ur.per_region[i]) + std::abs(uz.per_region[i]);
  res.terms = {std::abs(ur.value), std::abs(uz.value)};
  res.tail_bound = ur.tail_bound + uz.tail_bound;
  res.quad_err = ur.quad_err + uz.quad_err;
  res.converged = ur.converged && uz.converged;
  res.region_edges = ur.region_edges;
  return res;
}

std::vector<TraceSample> decay_trace(const VorticityField& w, VelocityComponent c, std::span<const double> r_ladder,
                                     const DecayTraceOptions& opt) {
  for (std::size_t i = 0; i < r_ladder.size(); ++i) {
    if (!(r_ladder[i] > 1.0)) throw DomainError("decay_trace: radii must exceed 1");
    if (i > 0 && !(r_ladder[i] > r_ladder[i - 1])) throw DomainError("decay_trace: radii must increase");
  }
  QuadratureSpec base = opt.spec;
  double exponent = -1.0;
  if (w.decay_beta) {
    exponent = predicted_decay(*w.decay_beta).exponent;
    if (opt.split_from_beta) {
      const SplitOptimum split = optimize_split(*w.decay_beta);
      base.gamma = split.gamma;
      base.delta = split.delta;
    }
  }
  return parallel_map<TraceSample>(r_ladder.size(), opt.workers, [&](std::size_t i) {
    const double r = r_ladder[i];
    QuadratureSpec spec = base;
    spec.tol.abs = opt.tol_factor * std::pow(r, exponent);
    ReconstructionResult res = reconstruct(c, w, MeridianPoint{r, opt.z}, spec);
    const double limit = opt.max_relative_error * std::abs(res.value);
    if (res.total_error() > limit && std::abs(res.value) > 0.0) {
      // Tighten against the computed magnitude once.
      spec.tol.abs = std::min(spec.tol.abs, 1e-3 * std::abs(res.value));
      res = reconstruct(c, w, MeridianPoint{r, opt.z}, spec);
    }
    TraceSample s;
    s.r = r;
    s.value = std::abs(res.value);
    s.quad_err = res.quad_err;
    s.tail_bound = res.tail_bound;
    s.per_region = res.per_region;
    s.flagged = !res.converged || res.total_error() > opt.max_relative_error * s.value;
    return s;
  });
}

}  // namespace axiskit
