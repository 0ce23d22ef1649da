#include <doctest.h>

#include <cmath>
#include <random>

#include "yule/charpoly.hpp"
#include "yule/errors.hpp"
#include "yule/kernel.hpp"
#include "yule/mgf.hpp"
#include "yule/simulation.hpp"

using namespace yule;

namespace {

// phi from the eigenvalues: prod_k (1 + l_k (s11 + s22 + 2 r s12) + l_k^2 (1 - r^2)(s11 s22 - s12^2))^(-1/2).
Jet phi_product(const SpectrumSummary& sp, double r, double s11, const Jet& s12, double s22) {
  Jet acc = Jet::constant(s12.order(), 0.0);
  for (double l : sp.eigenvalues) {
    const Jet q = 1.0 + l * (s11 + s22 + 2.0 * r * s12) + l * l * (1.0 - r * r) * (s11 * s22 - s12 * s12);
    acc += log(q);
  }
  return exp(-0.5 * acc);
}

}  // namespace

TEST_CASE("rho_upsilon") {
  const auto a = rho_upsilon(MgfInputs{3.0, 0.0, 1.0, 0.0});
  CHECK(a.rho == doctest::Approx(-3.0));
  CHECK(a.upsilon == doctest::Approx(-1.0));
  const auto b = rho_upsilon(MgfInputs{1.0, 0.0, 3.0, 0.0});
  CHECK(b.rho == doctest::Approx(-3.0));
  CHECK(b.upsilon == doctest::Approx(-1.0));
  const auto c = rho_upsilon(MgfInputs{2.0, 2.0, 2.0, 0.0});
  CHECK(c.rho == doctest::Approx(-4.0));
  CHECK(std::fabs(c.upsilon) < 1e-15);
  const auto d = rho_upsilon(MgfInputs{1.5, 0.0, 1.5, 1.0});
  CHECK(d.rho == doctest::Approx(-3.0));
  CHECK(std::fabs(d.upsilon) < 1e-15);
  CHECK_THROWS_AS(rho_upsilon(MgfInputs{1.0, 0.0, 1.0, -1.5}), DomainError);
  CHECK_THROWS_AS(rho_upsilon(JetMgfInputs{1.0, Jet::variable(2, 0.0), 1.0, 0.0}), DomainError);
}

TEST_CASE("phi_n examples") {
  CHECK(phi_n(7, 0.3, MgfInputs{0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  for (double s : {0.5, 3.0, 40.0})
    CHECK(phi_n(12, 0.2, MgfInputs{s, 0.0, 0.0, 0.0}) == doctest::Approx(1.0 / std::sqrt(d_n(12, 0.2, -s))).epsilon(1e-14));
  CHECK(phi_n(2, 0.0, MgfInputs{2.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("phi_n range and monotonicity") {
  for (double s11 = 0.0; s11 < 20.0; s11 += 1.3)
    for (double s22 = 0.0; s22 < 20.0; s22 += 1.7) {
      const double v = phi_n(15, 0.4, MgfInputs{s11, 0.0, s22, 0.0});
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      CHECK(phi_n(15, 0.4, MgfInputs{s11 + 0.5, 0.0, s22, 0.0}) < v);
      CHECK(phi_n(15, 0.4, MgfInputs{s11, 0.0, s22 + 0.5, 0.0}) < v);
    }
}

TEST_CASE("PhiExpansion matches the spectral product form") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (double r : {0.0, 0.1, -0.6}) {
    for (int n : {5, 30}) {
      const double a = 0.2;
      const auto sp = eigen_sym(build_kernel(n, a));
      const PhiExpansion ex(n, a, r, 10);
      for (int t = 0; t < 40; ++t) {
        const double s11 = std::pow(10.0, -3.0 + 5.0 * U(g));
        const double s22 = t % 4 == 0 ? s11 * (1.0 + 1e-9 * U(g)) : std::pow(10.0, -3.0 + 5.0 * U(g));
        const Jet e = ex.at(s11, s22);
        const Jet o = phi_product(sp, r, s11, Jet::variable(10, 0.0), s22);
        for (int k = 0; k <= 10; ++k) {
          INFO("r=" << r << " n=" << n << " s11=" << s11 << " s22=" << s22 << " k=" << k);
          CHECK(std::fabs(e[k] - o[k]) <= 1e-9 * (std::fabs(o[0]) + std::fabs(o[k])) + 1e-300);
        }
      }
    }
  }
}

TEST_CASE("odd jet coefficients vanish in the independent case") {
  const PhiExpansion ex(30, 0.05, 0.0, 10);
  for (double s11 : {1e-3, 0.2, 1.0, 7.0, 300.0})
    for (double s22 : {1e-3, 0.5, 1.0, 7.0, 300.0}) {
      const Jet j = ex.at(s11, s22);
      for (int k = 1; k <= 9; k += 2) CHECK(std::fabs(j[k]) <= 1e-13 * std::max(1.0, std::fabs(j[0])));
    }
}

TEST_CASE("moment basics") {
  CHECK(moment(0, 10, 0.1, 0.0).value == 1.0);
  CHECK(moment(3, 10, 0.1, 0.0).value == 0.0);
  CHECK(moment(1, 10, 0.1, 0.0).value == 0.0);
  CHECK_THROWS_AS(moment(11, 10, 0.1, 0.0), ContractError);
  CHECK_THROWS_AS(moment(2, 10, 1.0, 0.0), DomainError);
  CHECK(default_tol_rel(4) == 1e-7);
  CHECK(default_tol_rel(6) == 1e-5);
}

TEST_CASE("moment matches reference table values") {
  const auto m2 = moment(2, 10, 0.1, 0.0);
  CHECK(m2.quad.converged);
  CHECK(std::fabs(m2.value - 1.122613) <= 1e-4);
  CHECK(std::fabs(moment(4, 30, 0.05, 0.0).value - 3.026394) <= 5e-3);
  CHECK(std::fabs(moment(1, 30, 0.05, 0.1).value - 0.538403) <= 1e-3);
}

TEST_CASE("moments are bounded by n^(m/2)") {
  for (int m : {2, 4, 6}) {
    const auto res = moment(m, 4, 0.3, 0.2);
    CHECK(std::fabs(res.value) <= std::pow(4.0, m / 2.0));
  }
}

TEST_CASE("second_moment_scaled") {
  CHECK(std::fabs(second_moment_scaled(10, 0.1).value - 1.122613) <= 1e-4);
  CHECK(std::fabs(second_moment_scaled(200, 0.1).value - 1.024627) <= 1e-4);
  CHECK(std::fabs(second_moment_scaled(800, 0.1).value - 1.021242) <= 1e-4);
  CHECK_THROWS_AS(second_moment_scaled(1, 0.1), ContractError);
}

TEST_CASE("two second-moment routes agree") {
  for (int n : {10, 30, 100})
    for (double a : {0.05, 0.1, 0.5}) {
      const auto x = moment(2, n, a, 0.0);
      const auto y = second_moment_scaled(n, a);
      INFO("n=" << n << " a=" << a << " " << x.value << " " << y.value);
      CHECK(std::fabs(x.value - y.value) <= x.quad.error_estimate + y.quad.error_estimate + 1e-12);
    }
}

TEST_CASE("limit_second_moment") {
  CHECK(limit_second_moment(0.1) == doctest::Approx(1.01 / 0.99).epsilon(1e-15));
  CHECK(std::fabs(limit_second_moment(0.1) - 1.020202) <= 1e-6);
  CHECK(limit_second_moment(0.0) == 1.0);
  CHECK(limit_second_moment(0.5) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("Monte Carlo agrees with the exact second moment") {
  const auto stats = sample_stats(ModelSpec::gaussian(10, 0.1), 1'000'000, 2024);
  double s = 0.0, s2 = 0.0;
  for (const auto& e : stats) {
    const double v = 10.0 * e.theta * e.theta;
    s += v;
    s2 += v * v;
  }
  const double N = static_cast<double>(stats.size());
  const double mean = s / N, se = std::sqrt((s2 / N - mean * mean) / N);
  CHECK(std::fabs(mean - moment(2, 10, 0.1, 0.0).value) <= 4.0 * se);
}
