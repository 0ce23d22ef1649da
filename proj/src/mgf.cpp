#include "yule/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "yule/charpoly.hpp"
#include "yule/errors.hpp"
#include "yule/kernel.hpp"

namespace yule {

namespace {

using std::sqrt;

constexpr double kSeriesMaxRatio = 0.4;
constexpr int kMaxMoment = 10;

}  // namespace

template <class T>
RhoUpsilon<T> rho_upsilon(const MgfInputsT<T>& in) {
  if (!(std::fabs(in.r) <= 1.0)) throw DomainError("rho_upsilon: |r| must be <= 1");
  if (!(in.s11 >= 0.0) || !(in.s22 >= 0.0)) throw DomainError("rho_upsilon: s11 and s22 must be >= 0");
  const double d = in.s11 - in.s22;
  const T R = d * d + 4.0 * (in.r * in.s11 + in.s12) * (in.r * in.s22 + in.s12);
  const T A = in.s11 + in.s22 + 2.0 * in.r * in.s12;
  const double R0 = value_of(R);
  if (R0 < 0.0) throw DomainError("rho_upsilon: negative radicand");
  if constexpr (std::is_same_v<T, double>) {
    const double h = std::sqrt(R0);
    return {-(A + h) / 2.0, -(A - h) / 2.0};
  } else {
    if (R0 == 0.0) throw DomainError("rho_upsilon: zero radicand has no jet square root");
    const T h = sqrt(R);
    return {-(A + h) * 0.5, -(A - h) * 0.5};
  }
}

template <class T>
T phi_n(int n, double alpha, const MgfInputsT<T>& in) {
  using std::exp;
  const RhoUpsilon<T> ru = rho_upsilon(in);
  return exp(-0.5 * (log_d_n(n, alpha, ru.rho) + log_d_n(n, alpha, ru.upsilon)));
}

template RhoUpsilon<double> rho_upsilon<double>(const MgfInputsT<double>&);
template RhoUpsilon<Jet> rho_upsilon<Jet>(const MgfInputsT<Jet>&);
template double phi_n<double>(int, double, const MgfInputsT<double>&);
template Jet phi_n<Jet>(int, double, const MgfInputsT<Jet>&);

PhiExpansion::PhiExpansion(int n, double alpha, double r, int order)
    : n_(n), alpha_(alpha), r_(r), order_(order) {
  if (n < 1) throw ContractError("n must be >= 1");
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  if (!(std::fabs(r) <= 1.0)) throw DomainError("|r| must be <= 1");
  if (order < 0) throw ContractError("order must be >= 0");
  // Slightly shrink 1/lambda_1 so the radius used for the series is never overstated.
  inv_lambda1_ = n > 1 ? 0.999 / largest_eigenvalue(n, alpha) : INFINITY;
}

double PhiExpansion::ratio(double s11, double s22) const {
  const double d = s11 - s22;
  const double h0 = 0.5 * std::sqrt(d * d + 4.0 * r_ * r_ * s11 * s22);
  return h0 / (0.5 * (s11 + s22) + inv_lambda1_);
}

bool PhiExpansion::uses_series(double s11, double s22) const { return ratio(s11, s22) <= kSeriesMaxRatio; }

Jet PhiExpansion::at(double s11, double s22) const {
  const int m = order_;
  const double q = ratio(s11, s22);
  if (q > kSeriesMaxRatio) {
    JetMgfInputs in{s11, Jet::variable(m, 0.0), s22, r_};
    return phi_n(n_, alpha_, in);
  }

  // Series length: smallest J with C(J, m) 2^m q^(J-m) (J+1) below 1e-17.
  int J = m + 2;
  if (q > 0.0) {
    const double lq = std::log(q);
    const double target = std::log(1e-17) - m * std::log(2.0);
    for (;; ++J) {
      const double lbin = std::lgamma(J + 1.0) - std::lgamma(m + 1.0) - std::lgamma(J - m + 1.0);
      if (lbin + (J - m) * lq + std::log(J + 1.0) < target || J >= 200) break;
    }
  }

  const double c0 = -0.5 * (s11 + s22);
  const Jet F = log_d_n(n_, alpha_, Jet::variable(J, c0));

  const double d = s11 - s22;
  Jet ct(m), H(m);
  std::vector<double> hc(static_cast<std::size_t>(m) + 1, 0.0), cc(static_cast<std::size_t>(m) + 1, 0.0);
  hc[0] = 0.25 * d * d + r_ * r_ * s11 * s22;
  if (m >= 1) {
    hc[1] = r_ * (s11 + s22);
    cc[1] = -r_;
  }
  if (m >= 2) hc[2] = 1.0;
  H = Jet(hc);
  ct = Jet(cc);

  const Jet two_ct = 2.0 * ct;
  const Jet prod = ct * ct - H;
  Jet s_prev = Jet::constant(m, 2.0);  // S_0
  Jet s_cur = two_ct;                  // S_1
  Jet L = F[0] * s_prev;
  if (J >= 1) L += F[1] * s_cur;
  for (int j = 2; j <= J; ++j) {
    Jet s_next = two_ct * s_cur - prod * s_prev;
    L += F[j] * s_next;
    s_prev = std::move(s_cur);
    s_cur = std::move(s_next);
  }
  return exp(-0.5 * L);
}

double default_tol_rel(int m) { return m <= 4 ? 1e-7 : 1e-5; }

double limit_second_moment(double alpha) {
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  return (1.0 + alpha * alpha) / (1.0 - alpha * alpha);
}

MomentResult moment(int m, int n, double alpha, double r, const MomentOptions& opts) {
  if (m < 0 || m > kMaxMoment) {
    throw ContractError("moment order must be in [0, " + std::to_string(kMaxMoment) + "]");
  }
  if (n < 2) throw ContractError("moment needs n >= 2");
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  if (!(std::fabs(r) <= 1.0)) throw DomainError("|r| must be <= 1");

  MomentResult res;
  res.m = m;
  res.n = n;
  res.alpha = alpha;
  res.r = r;
  if (m == 0) {
    res.value = 1.0;
    res.quad.value = 1.0;
    res.quad.converged = true;
    return res;
  }
  if (r == 0.0 && m % 2 == 1) {
    res.value = 0.0;
    res.quad.converged = true;
    return res;
  }

  const PhiExpansion ex(n, alpha, r, m);
  const double half = 0.5 * m;
  // n^{m/2} (-1)^m m! / (2^m Gamma(m/2)^2)
  const double pref = std::exp(half * std::log(static_cast<double>(n)) + std::lgamma(m + 1.0) -
                               m * std::log(2.0) - 2.0 * std::lgamma(half)) *
                      (m % 2 == 0 ? 1.0 : -1.0);
  auto f = [&](double s11, double s22) {
    const Jet j = ex.at(s11, s22);
    return pref * std::pow(s11 * s22, half - 1.0) * j[m];
  };
  const double tol = opts.tol_rel > 0.0 ? opts.tol_rel : default_tol_rel(m);
  res.quad = integrate_quadrant(f, tol, opts.tol_abs, opts.max_nodes, opts.threads);
  res.value = res.quad.value;
  return res;
}

double second_moment_integrand(int n, double alpha, double s11, double s22) {
  const double a = std::max(s11, s22), b = std::min(s11, s22);
  const double la = log_abs_d_n(n, alpha, -a).log_abs;
  const double lb = log_abs_d_n(n, alpha, -b).log_abs;
  double quotient;
  const double h = 0.5 * (a - b);
  if (h > 1e-5 * (1.0 + a)) {
    quotient = (log_derivative_d_n(n, alpha, -a) - log_derivative_d_n(n, alpha, -b)) / (a - b);
  } else {
    // (psi(-mid-h) - psi(-mid+h)) / (2h) with psi = (log d)', expanded in h.
    const Jet L = log_d_n(n, alpha, Jet::variable(4, -0.5 * (a + b)));
    quotient = -(2.0 * L[2] + 4.0 * L[4] * h * h);
  }
  return 0.25 * n * quotient * std::exp(-0.5 * (la + lb));
}

MomentResult second_moment_scaled(int n, double alpha, const MomentOptions& opts) {
  if (n < 2) throw ContractError("second_moment_scaled needs n >= 2");
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  MomentResult res;
  res.m = 2;
  res.n = n;
  res.alpha = alpha;
  auto f = [&](double s11, double s22) { return second_moment_integrand(n, alpha, s11, s22); };
  const double tol = opts.tol_rel > 0.0 ? opts.tol_rel : default_tol_rel(2);
  res.quad = integrate_triangle_symmetric(f, tol, opts.tol_abs, opts.max_nodes, opts.threads);
  res.value = res.quad.value;
  return res;
}

}  // namespace yule
