#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "axiskit/angular_kernels.hpp"
#include "axiskit/error.hpp"
#include "axiskit/simd/angular_moments.hpp"
#include "doctest.h"

using namespace axiskit;
using namespace axiskit::simd;

namespace {

struct Block {
  std::vector<double> s, c, wk, wg;
  NodeBlock view() const { return {s.data(), c.data(), wk.data(), wg.data(), s.size()}; }
};

Block random_block(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> psi(0.0, kPi / 2), w(0.0, 0.3);
  Block b;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = psi(gen);
    b.s.push_back(std::sin(p) * std::sin(p));
    b.c.push_back(std::cos(2 * p));
    b.wk.push_back(w(gen));
    b.wg.push_back(i % 2 ? w(gen) : 0.0);
  }
  return b;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

class IsaGuard {
 public:
  IsaGuard() : saved_(active_isa()) {}
  ~IsaGuard() { set_active_isa(saved_); }

 private:
  Isa saved_;
};

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar variant is always available") {
    CHECK(isa_supported(Isa::scalar));
    CHECK(isa_name(Isa::scalar) == "scalar");
    IsaGuard guard;
    set_active_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
  }

  TEST_CASE("scalar moments match a direct sum") {
    std::mt19937_64 gen(3);
    const Block b = random_block(gen, 16);
    const MomentSums m = angular_moments_scalar(b.view(), 0.7, 3.1);
    double m0 = 0, ms = 0, mc = 0;
    for (std::size_t i = 0; i < 16; ++i) {
      const double d = std::pow(0.7 + 3.1 * b.s[i], -1.5);
      m0 += b.wk[i] * d;
      ms += b.wk[i] * d * b.s[i];
      mc += b.wk[i] * d * b.c[i];
    }
    CHECK(m.m0_k == doctest::Approx(m0).epsilon(1e-14));
    CHECK(m.ms_k == doctest::Approx(ms).epsilon(1e-14));
    CHECK(m.mc_k == doctest::Approx(mc).epsilon(1e-14));
  }

#if defined(AXISKIT_HAVE_AVX2)
  TEST_CASE("AVX2 moments are bit-identical to the scalar reference") {
    if (!isa_supported(Isa::avx2)) {
      MESSAGE("CPU lacks AVX2; equivalence not exercised");
      return;
    }
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> logd(-12.0, 6.0), logb(-3.0, 9.0);
    for (int trial = 0; trial < 500; ++trial) {
      const Block b = random_block(gen, 4 * (1 + trial % 8));
      const double d2 = std::pow(10.0, logd(gen)), bb = std::pow(10.0, logb(gen));
      const MomentSums s = angular_moments_scalar(b.view(), d2, bb);
      const MomentSums v = angular_moments_avx2(b.view(), d2, bb);
      REQUIRE(same_bits(s.m0_k, v.m0_k));
      REQUIRE(same_bits(s.ms_k, v.ms_k));
      REQUIRE(same_bits(s.mc_k, v.mc_k));
      REQUIRE(same_bits(s.m0_g, v.m0_g));
      REQUIRE(same_bits(s.ms_g, v.ms_g));
      REQUIRE(same_bits(s.mc_g, v.mc_g));
    }
  }

  TEST_CASE("kernel values do not depend on the dispatched variant") {
    if (!isa_supported(Isa::avx2)) return;
    IsaGuard guard;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.1, 20.0), z(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
      const double r = u(gen), rho = u(gen), zeta = z(gen);
      set_active_isa(Isa::scalar);
      const KernelTriple a = kernel_triple(r, rho, zeta);
      set_active_isa(Isa::avx2);
      const KernelTriple b = kernel_triple(r, rho, zeta);
      CHECK(same_bits(a.gamma1, b.gamma1));
      CHECK(same_bits(a.gamma2, b.gamma2));
      CHECK(same_bits(a.gamma3, b.gamma3));
    }
  }
#else
  TEST_CASE("AVX2 variant is rejected when not built") {
    CHECK_FALSE(isa_supported(Isa::avx2));
    CHECK_THROWS_AS(set_active_isa(Isa::avx2), DomainError);
  }
#endif
}
