#pragma once

// Truncated bivariate Taylor polynomials in the meridian variables (r, z).
//
// A Jet<N> carries every partial derivative of total order <= N at one point,
// propagated exactly through arithmetic and the elementary functions below.
// Profiles written as generic lambdas over the scalar type therefore yield
// analytic derivatives for free (evaluate with Jet<N> instead of double).

#include <array>
#include <cmath>
#include <cstddef>

namespace axiskit {

template <int N>
class Jet {
  static_assert(N >= 0 && N <= 4, "jet order out of supported range");

 public:
  static constexpr int kOrder = N;
  static constexpr std::size_t kSize = static_cast<std::size_t>((N + 1) * (N + 2) / 2);

  constexpr Jet() = default;
  constexpr Jet(double constant) { c_[0] = constant; }  // NOLINT: implicit by design of scalar promotion

  static constexpr Jet variable_r(double r) {
    Jet j(r);
    if constexpr (N >= 1) j.c_[index(1, 0)] = 1.0;
    return j;
  }
  static constexpr Jet variable_z(double z) {
    Jet j(z);
    if constexpr (N >= 1) j.c_[index(0, 1)] = 1.0;
    return j;
  }

  // Taylor coefficient of dr^i dz^j (i.e. the partial divided by i! j!).
  constexpr double coeff(int i, int j) const { return c_[index(i, j)]; }
  constexpr double& coeff(int i, int j) { return c_[index(i, j)]; }

  constexpr double value() const { return c_[0]; }

  // Partial derivative d^{i+j} / dr^i dz^j.
  constexpr double partial(int i, int j) const { return c_[index(i, j)] * factorial(i) * factorial(j); }

  constexpr double d_r() const { return partial(1, 0); }
  constexpr double d_z() const { return partial(0, 1); }
  constexpr double d_rr() const { return partial(2, 0); }
  constexpr double d_rz() const { return partial(1, 1); }
  constexpr double d_zz() const { return partial(0, 2); }

  /// Exact derivative in r, one order lower.
  constexpr Jet<(N > 0 ? N - 1 : 0)> derivative_r() const {
    Jet<(N > 0 ? N - 1 : 0)> out;
    for (int i = 0; i + 1 <= N; ++i)
      for (int j = 0; i + 1 + j <= N; ++j) out.coeff(i, j) = (i + 1) * coeff(i + 1, j);
    return out;
  }
  constexpr Jet<(N > 0 ? N - 1 : 0)> derivative_z() const {
    Jet<(N > 0 ? N - 1 : 0)> out;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j + 1 <= N; ++j) out.coeff(i, j) = (j + 1) * coeff(i, j + 1);
    return out;
  }

  /// Drops the terms of order > M.
  template <int M>
  constexpr Jet<M> truncate() const {
    static_assert(M <= N);
    Jet<M> out;
    for (int i = 0; i <= M; ++i)
      for (int j = 0; i + j <= M; ++j) out.coeff(i, j) = coeff(i, j);
    return out;
  }

  constexpr Jet operator-() const {
    Jet out;
    for (std::size_t k = 0; k < kSize; ++k) out.c_[k] = -c_[k];
    return out;
  }
  constexpr Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) { return *this = *this * o; }
  constexpr Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend constexpr Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (int i1 = 0; i1 <= N; ++i1)
      for (int j1 = 0; i1 + j1 <= N; ++j1) {
        const double av = a.coeff(i1, j1);
        if (av == 0.0) continue;
        for (int i2 = 0; i1 + j1 + i2 <= N; ++i2)
          for (int j2 = 0; i1 + j1 + i2 + j2 <= N; ++j2) out.coeff(i1 + i2, j1 + j2) += av * b.coeff(i2, j2);
      }
    return out;
  }
  friend constexpr Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  // Composition with a scalar function given its derivatives at the base point:
  // f(x) = sum_k f^(k)(x0) / k! * (x - x0)^k, where (x - x0) is nilpotent.
  static Jet compose(const Jet& x, const std::array<double, N + 1>& derivs) {
    Jet h = x;
    h.c_[0] = 0.0;
    Jet out(derivs[0]);
    Jet power(1.0);
    double inv_fact = 1.0;
    for (int k = 1; k <= N; ++k) {
      power = power * h;
      inv_fact /= k;
      const double scale = derivs[k] * inv_fact;
      for (std::size_t m = 0; m < kSize; ++m) out.c_[m] += scale * power.c_[m];
    }
    return out;
  }

  static Jet reciprocal(const Jet& x) { return pow(x, -1.0); }

  friend Jet pow(const Jet& x, double p) {
    std::array<double, N + 1> d{};
    const double a = x.value();
    double falling = 1.0;
    for (int k = 0; k <= N; ++k) {
      d[k] = falling * std::pow(a, p - k);
      falling *= (p - k);
    }
    return compose(x, d);
  }
  friend Jet sqrt(const Jet& x) { return pow(x, 0.5); }
  friend Jet exp(const Jet& x) {
    std::array<double, N + 1> d{};
    d.fill(std::exp(x.value()));
    return compose(x, d);
  }
  friend Jet log(const Jet& x) {
    std::array<double, N + 1> d{};
    const double a = x.value();
    d[0] = std::log(a);
    double fact = 1.0;
    for (int k = 1; k <= N; ++k) {
      d[k] = ((k % 2 == 1) ? 1.0 : -1.0) * fact / std::pow(a, k);
      fact *= k;
    }
    return compose(x, d);
  }
  friend Jet sin(const Jet& x) {
    std::array<double, N + 1> d{};
    const double s = std::sin(x.value()), c = std::cos(x.value());
    const double cycle[4] = {s, c, -s, -c};
    for (int k = 0; k <= N; ++k) d[k] = cycle[k % 4];
    return compose(x, d);
  }
  friend Jet cos(const Jet& x) {
    std::array<double, N + 1> d{};
    const double s = std::sin(x.value()), c = std::cos(x.value());
    const double cycle[4] = {c, -s, -c, s};
    for (int k = 0; k <= N; ++k) d[k] = cycle[k % 4];
    return compose(x, d);
  }

  static constexpr std::size_t index(int i, int j) {
    // Graded ordering: all terms of total degree d precede degree d + 1.
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

 private:
  static constexpr double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  }

  std::array<double, kSize> c_{};
};

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) {
  return x.value();
}

}  // namespace axiskit
