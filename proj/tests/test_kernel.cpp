#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "yule/errors.hpp"
#include "yule/kernel.hpp"

using namespace yule;

namespace {

const std::vector<double> kAlphas{-0.9, -0.5, -0.1, 0.0, 0.1, 0.3, 0.5, 0.9};

double trace_power(const KernelMatrix& K, int p) {
  const int n = K.n;
  std::vector<double> M(K.entries), T(K.entries.size());
  for (int q = 1; q < p; ++q) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += M[i * n + k] * K(k, j);
        T[i * n + j] = s;
      }
    M.swap(T);
  }
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += M[i * n + i];
  return tr;
}

}  // namespace

TEST_CASE("build_kernel small cases") {
  const auto K1 = build_kernel(1, 0.7);
  REQUIRE(K1.entries.size() == 1);
  CHECK(K1(0, 0) == 0.0);
  const auto K2 = build_kernel(2, 0.0);
  CHECK(K2(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(K2(0, 1) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(K2(1, 0) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(K2(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(build_kernel(3, 1.0), DomainError);
  CHECK_THROWS_AS(build_kernel(0, 0.1), ContractError);
}

TEST_CASE("build_kernel matches exact rational arithmetic") {
  using Q = boost::multiprecision::cpp_rational;
  const int n = 5;
  const Q a(1, 2);
  const auto K = build_kernel(n, 0.5);
  const auto pw = [](const Q& x, int e) {
    Q r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  };
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      const Q e = (pw(a, std::abs(k - j)) - pw(a, k + j)) / (1 - a * a) / n -
                  (1 - pw(a, k)) * (1 - pw(a, j)) / ((1 - a) * (1 - a)) / (n * n);
      CHECK(std::fabs(K(j - 1, k - 1) - static_cast<double>(e)) <= 1e-15);
    }
}

TEST_CASE("kernel is exactly symmetric") {
  for (double a : kAlphas) {
    const auto K = build_kernel(17, a);
    for (int j = 0; j < 17; ++j)
      for (int k = 0; k < 17; ++k) CHECK(K(j, k) == K(k, j));
  }
}

TEST_CASE("eigen_sym examples") {
  const auto s2 = eigen_sym(build_kernel(2, 0.0));
  CHECK(s2.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::fabs(s2.eigenvalues[1]) < 1e-15);

  const auto K = build_kernel(10, 0.1);
  double tr = 0.0;
  for (int i = 0; i < 10; ++i) tr += K(i, i);
  CHECK(std::fabs(eigen_sym(K).sum - tr) <= 1e-12);

  const auto s20 = eigen_sym(build_kernel(20, 0.3));
  const auto cp = closed_product(20, 0.3);
  CHECK(std::fabs(s20.log_positive_product - cp.log_product) <= 1e-8);
}

TEST_CASE("spectrum is PSD with rank n-1 and reconstructs K") {
  for (int n : {2, 3, 7, 25, 60}) {
    for (double a : kAlphas) {
      const auto K = build_kernel(n, a);
      const auto s = eigen_sym(K);
      double kmax = 0.0;
      for (double e : K.entries) kmax = std::max(kmax, std::fabs(e));
      CHECK(s.reconstruction_error <= 1e-10 * kmax);
      for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
      CHECK(std::fabs(s.eigenvalues.back()) <= 1e-10);
      for (int i = 0; i + 1 < n; ++i) CHECK(s.eigenvalues[i] > 1e-12);
      const auto rc = rate_constants(a);
      CHECK(s.eigenvalues.front() <= std::pow(rc.C3, 0.25) * std::pow(n, -0.75) + 1e-8);
    }
  }
}

TEST_CASE("largest_eigenvalue agrees with Jacobi") {
  for (int n : {2, 9, 40}) {
    for (double a : kAlphas) {
      const auto s = eigen_sym(build_kernel(n, a));
      CHECK(largest_eigenvalue(n, a) == doctest::Approx(s.eigenvalues.front()).epsilon(1e-12));
    }
  }
}

TEST_CASE("trace_identity") {
  for (int n : {1, 2, 5, 50}) {
    const auto t = trace_identity(n, 0.0);
    CHECK(t.sum_lambda == doctest::Approx(1.0 - 1.0 / n).epsilon(1e-15));
    CHECK(t.kappa1 == doctest::Approx(-1.0).epsilon(1e-14));
  }
  const auto K = build_kernel(10, 0.1);
  double tr = 0.0;
  for (int i = 0; i < 10; ++i) tr += K(i, i);
  CHECK(std::fabs(trace_identity(10, 0.1).sum_lambda - tr) <= 1e-14);
  for (double a : kAlphas) {
    const double C1 = rate_constants(a).C1;
    for (int n = 1; n <= 300; ++n) CHECK(std::fabs(trace_identity(n, a).kappa1) <= C1);
  }
}

TEST_CASE("squared_sum_identity") {
  for (double a : {0.0, 0.1}) {
    for (int n : {4, 10}) {
      const auto K = build_kernel(n, a);
      double fro = 0.0;
      for (double e : K.entries) fro += e * e;
      CHECK(squared_sum_identity(n, a).sum_lambda_sq == doctest::Approx(fro).epsilon(1e-12));
    }
  }
  for (double a : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
    const double C2 = rate_constants(a).C2;
    for (int n = 1; n <= 200; ++n) CHECK(std::fabs(squared_sum_identity(n, a).kappa2) <= C2);
  }
}

TEST_CASE("quartic_sum_bound") {
  const auto q = quartic_sum_bound(10, 0.1);
  CHECK(q.sum_lambda_4 <= rate_constants(0.1).C3 / 1000.0);
  CHECK(q.bound == doctest::Approx(rate_constants(0.1).C3 / 1000.0));
  const auto q0 = quartic_sum_bound(9, 0.0);
  CHECK(q0.sum_lambda_4 == doctest::Approx(trace_power(build_kernel(9, 0.0), 4)).epsilon(1e-12));
  CHECK(quartic_sum_bound(2, 0.0).sum_lambda_4 == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  CHECK_THROWS_AS(quartic_sum_bound(1, 0.0), ContractError);
}

TEST_CASE("closed_product") {
  CHECK(closed_product(2, 0.0).product == doctest::Approx(0.5).epsilon(1e-15));
  for (double a : kAlphas)
    CHECK(closed_product(2, a).product == doctest::Approx((1.0 + a * a / 2.0 - a) / 2.0).epsilon(1e-15));
  const auto s = eigen_sym(build_kernel(30, 0.5));
  CHECK(std::fabs(s.log_positive_product - closed_product(30, 0.5).log_product) <= 1e-6);
  for (double a : {-0.9, -0.5, 0.0, 0.1, 0.5, 0.9})
    for (int n = 2; n <= 500; ++n) CHECK(closed_product(n, a).geometric_mean_stat >= 0.25);
}

TEST_CASE("rate_constants") {
  const auto c0 = rate_constants(0.0);
  CHECK(c0.C1 == doctest::Approx(1.0));
  CHECK(c0.C3 == doctest::Approx(std::pow(std::pow(2.0, 4.0 / 3.0) + 16.0, 3.0)).epsilon(1e-14));
  const auto c = rate_constants(0.1);
  for (double v : {c.C1, c.C2, c.C3, c.C4, c.C5, c.C6}) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  const auto c9 = rate_constants(0.9);
  CHECK(c9.C1 > c.C1);
  CHECK(c9.C3 > c.C3);
  CHECK_THROWS_AS(rate_constants(1.0), DomainError);
}

TEST_CASE("identities against the numeric spectrum on a grid") {
  for (int n = 2; n <= 40; n += 3) {
    for (double a : kAlphas) {
      const auto s = eigen_sym(build_kernel(n, a));
      CHECK(std::fabs(s.sum - trace_identity(n, a).sum_lambda) <= 1e-12);
      CHECK(s.sum_sq == doctest::Approx(squared_sum_identity(n, a).sum_lambda_sq).epsilon(1e-11));
      CHECK(std::fabs(s.log_positive_product - closed_product(n, a).log_product) <= 1e-6);
    }
  }
}

TEST_CASE("n sum lambda^2 approaches its limit") {
  const double a = 0.3;
  const double lim = (1 + a * a) / std::pow(1 - a * a, 3);
  CHECK(10000.0 * squared_sum_identity(10000, a).sum_lambda_sq == doctest::Approx(lim).epsilon(0.01));
}
