#include "yule/charpoly.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "yule/errors.hpp"
#include "yule/kernel.hpp"

namespace yule {

namespace {

using std::exp;
using std::log;
using std::sqrt;

void require_args(int n, double alpha) {
  if (n < 1) throw ContractError("n must be >= 1");
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
}

bool closed_form_ok(int n, double a, double lambda) {
  if (lambda == 0.0) return false;
  const double x = lambda / n;
  const double b = 1.0 - x + a * a;
  const double delta = b * b - 4.0 * a * a;
  const double P = n * ((1.0 - a) * (1.0 - a) - x);
  const double scale = 1.0 + std::fabs(x);
  return b > 0.0 && delta >= 1e-8 * scale * scale && std::fabs(P) >= 1e-8 * n;
}

// d_n = gamma1^{n+1} * B; returns log gamma1 and B.
template <class T>
void closed_form_scaled(int n, double a, const T& lambda, T& log_g1, T& B) {
  const double a2 = a * a;
  const T x = lambda / static_cast<double>(n);
  const T b = 1.0 - x + a2;
  const T delta = b * b - 4.0 * a2;
  const T s = sqrt(delta);
  const T g1 = (b + s) * 0.5;
  log_g1 = log(g1);
  const T G = 1.0 / g1;

  // (1 - a^2)^2 - 2x(1 + a^2) = (s + x)(s - x); pick the form without cancellation.
  const T prod = (1.0 - a2) * (1.0 - a2) - 2.0 * (1.0 + a2) * x;
  T spx = s + x, smx = s - x;
  if (value_of(x) < 0.0) {
    spx = prod / smx;
  } else {
    smx = prod / spx;
  }

  if (a == 0.0) {
    B = spx / delta;
    return;
  }

  const T DP = delta * (static_cast<double>(n) * ((1.0 - a) * (1.0 - a) - x));
  const T T4_base = x * G / delta;

  const T g = a2 * G * G;
  const T gnm1 = exp((n - 1.0) * (2.0 * std::log(std::fabs(a)) - 2.0 * log_g1));
  const T gn = gnm1 * g;
  const T gn1 = gn * g;
  const double sgn = (a < 0.0 && (n % 2 == 1)) ? -1.0 : 1.0;
  const T aGn = sgn * exp(static_cast<double>(n) * (std::log(std::fabs(a)) - log_g1));
  const T aGn1 = aGn * G * a;

  const T one_gn = 1.0 + gn;
  B = (spx - gn1 * smx) / delta                                         // T1 + T3
      - a2 * G * (1.0 - gn) / s                                         // T2
      - ((n - 1.0) / n) * a2 * T4_base * one_gn                         // T4
      + (2.0 * (n - 1.0) * a) * x * (1.0 + gn1) / DP                    // T5
      - (2.0 * a2 * ((n - 2.0) * a + (n + 1.0))) * x * G * one_gn / DP  // T6 + T7
      + (2.0 * a2 * a2) * lambda * G * G * (1.0 + gnm1) / DP            // T8
      + (2.0 * a * (1.0 - a)) * x * aGn * (1.0 + g) / DP                // T9
      + (4.0 * a * (1.0 - a)) * x * aGn1 / DP;                          // T10
}

// d_n = q_n(x) + (lambda/n^2) * sum_k (q_{k-1} + 2 A_k) p_{n-k}, x = lambda/n.
template <class T>
T recurrence_d_n(int n, double a, const T& lambda) {
  const double a2 = a * a;
  const T x = lambda / static_cast<double>(n);
  const T b = 1.0 - x + a2;
  std::vector<T> p;
  p.reserve(static_cast<std::size_t>(n) + 1);
  p.push_back(constant_like(x, 1.0));
  p.push_back(b);
  for (int m = 2; m <= n; ++m) p.push_back(b * p[m - 1] - a2 * p[m - 2]);
  auto q = [&](int m) -> T { return m == 0 ? p[0] : p[m] - a2 * p[m - 1]; };

  T A = constant_like(x, 0.0);
  T S = (q(0) + 2.0 * A) * p[n - 1];
  for (int k = 2; k <= n; ++k) {
    A = a * (A + q(k - 2));
    S = S + (q(k - 1) + 2.0 * A) * p[n - k];
  }
  return q(n) + lambda * S / (static_cast<double>(n) * n);
}

}  // namespace

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

template <class T>
GammaDelta<T> gamma_delta(const T& lambda, double alpha) {
  const double a2 = alpha * alpha;
  const T b = 1.0 - lambda + a2;
  const T delta = b * b - 4.0 * a2;
  if (!(value_of(delta) > 0.0)) {
    throw BranchPointError("Delta <= 0 at lambda=" + std::to_string(value_of(lambda)) +
                           "; use the recurrence path");
  }
  const T s = sqrt(delta);
  GammaDelta<T> out{b, b, delta};
  if (value_of(b) >= 0.0) {
    out.gamma1 = (b + s) * 0.5;
    out.gamma2 = a2 / out.gamma1;
  } else {
    out.gamma2 = (b - s) * 0.5;
    out.gamma1 = a2 / out.gamma2;
  }
  return out;
}

template <class T>
T p_poly(int m, const T& lambda, double alpha) {
  if (m < -1) throw ContractError("p_poly needs m >= -1");
  if (m == -1) return constant_like(lambda, 0.0);
  const double a2 = alpha * alpha;
  const T b = 1.0 - lambda + a2;
  T prev = constant_like(lambda, 0.0), cur = constant_like(lambda, 1.0);
  for (int k = 1; k <= m; ++k) {
    T next = b * cur - a2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// d_n(0) = 1 exactly; the recurrence only reproduces it to rounding.
double with_value(double, double c) { return c; }
Jet with_value(const Jet& v, double c) {
  std::vector<double> k = v.coeffs();
  k[0] = c;
  return Jet(std::move(k));
}

}  // namespace

template <class T>
T d_n(int n, double alpha, const T& lambda) {
  require_args(n, alpha);
  if (n == 1) return constant_like(lambda, 1.0);
  if (closed_form_ok(n, alpha, value_of(lambda))) {
    T log_g1 = lambda, B = lambda;
    closed_form_scaled(n, alpha, lambda, log_g1, B);
    return exp((n + 1.0) * log_g1) * B;
  }
  if (value_of(lambda) == 0.0) return with_value(recurrence_d_n(n, alpha, lambda), 1.0);
  return recurrence_d_n(n, alpha, lambda);
}

template <class T>
T log_d_n(int n, double alpha, const T& lambda) {
  require_args(n, alpha);
  if (n == 1) return constant_like(lambda, 0.0);
  T v = lambda;
  if (closed_form_ok(n, alpha, value_of(lambda))) {
    T log_g1 = lambda;
    closed_form_scaled(n, alpha, lambda, log_g1, v);
    if (!(value_of(v) > 0.0)) throw DomainError("log_d_n: d_n is not positive");
    return (n + 1.0) * log_g1 + log(v);
  }
  v = recurrence_d_n(n, alpha, lambda);
  if (!(value_of(v) > 0.0)) throw DomainError("log_d_n: d_n is not positive");
  if (value_of(lambda) == 0.0) return with_value(log(v), 0.0);
  return log(v);
}

SignedLog log_abs_d_n(int n, double alpha, double lambda) {
  require_args(n, alpha);
  if (n == 1) return {0.0, 1};
  double v, shift = 0.0;
  if (closed_form_ok(n, alpha, lambda)) {
    double log_g1;
    closed_form_scaled(n, alpha, lambda, log_g1, v);
    shift = (n + 1.0) * log_g1;
  } else {
    v = recurrence_d_n(n, alpha, lambda);
  }
  if (v == 0.0) return {-INFINITY, 0};
  return {shift + std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

bool uses_closed_form(int n, double alpha, double lambda) {
  require_args(n, alpha);
  return n > 1 && closed_form_ok(n, alpha, lambda);
}

namespace {

// d_n' / gamma1^{n+1} and d_n / gamma1^{n+1} at lambda, plus log gamma1.
struct ScaledPrime {
  double dprime;
  double d;
  double log_g1;
};

ScaledPrime scaled_prime(int n, double a, double lambda) {
  const double a2 = a * a, a4 = a2 * a2;
  const double nn = n;
  const double x = lambda / nn;
  double log_g1, B;
  closed_form_scaled(n, a, lambda, log_g1, B);

  const double b = 1.0 - x + a2;
  const double delta = b * b - 4.0 * a2;
  const double s = std::sqrt(delta);
  const double g1 = std::exp(log_g1);
  const double G = 1.0 / g1;
  const double g = a2 * G * G;
  const double w = (1.0 - a) * (1.0 - a) - x;
  const double l1 = 1.0 / (delta * w);
  const double l2 = (3.0 * b + 2.0 * a) * l1;
  const double r0 = b / delta;

  // p_m and r_m for m = n-k, divided by gamma1^{n+1}.
  auto gpow = [&](int k) { return a == 0.0 ? 0.0 : std::pow(g, k); };
  auto ph = [&](int k) {
    const int m = n - k;
    return std::pow(G, k) * (1.0 - gpow(m + 1)) / s;
  };
  auto rh = [&](int k) {
    const int m = n - k;
    return std::pow(G, k) * (1.0 + gpow(m + 1)) / delta;
  };
  const double pn = ph(0), pn1 = ph(1), pn2 = ph(2);
  const double rn = rh(0), rn1 = rh(1), rn2 = rh(2);
  double an1 = 0.0;  // alpha^{n+1} / gamma1^{n+1}
  if (a != 0.0) {
    const double sgn = (a < 0.0 && ((n + 1) % 2 == 1)) ? -1.0 : 1.0;
    an1 = sgn * std::exp((nn + 1.0) * (std::log(std::fabs(a)) - log_g1));
  }
  const double L = lambda;
  const double n2 = nn * nn, n3 = n2 * nn;

  double dp = (B - pn + a2 * pn1) / L;
  dp += -(nn + 1.0) / nn * rn + r0 * pn / nn + a2 * rn1 - a2 / nn * r0 * pn1;
  dp += -(nn + 1.0) / n2 * L / delta * pn + 2.0 / n2 * L * r0 * rn;
  dp += (nn - 1.0) * a2 / n2 * L / delta * pn1 - 2.0 * (nn - 1.0) * a2 / n3 * L * r0 * rn1;
  dp += -2.0 * (n2 - 1.0) * a / n3 * L * pn * l1 + 2.0 * (nn - 1.0) * a / n3 * L * rn * l2;
  dp += 2.0 * (nn - 2.0) * a2 * a / n2 * L * pn1 * l1 - 2.0 * (nn - 2.0) * a2 * a / n3 * L * rn1 * l2;
  dp += 2.0 * (nn + 1.0) * a2 / n2 * L * pn1 * l1 - 2.0 * (nn + 1.0) * a2 / n3 * L * rn1 * l2;
  dp += -2.0 * (nn - 1.0) * a4 / n2 * L * pn2 * l1 + 2.0 * a4 / n2 * L * rn2 * l2;
  dp += -2.0 * an1 * (1.0 - a) / n3 * L * l1 + 2.0 * an1 * (1.0 - a) / n3 * L * r0 * l2;
  dp += 4.0 * an1 * a * (1.0 - a) / n3 * L / delta * l2;
  return {dp, B, log_g1};
}

}  // namespace

double d_n_prime(int n, double alpha, double lambda) {
  require_args(n, alpha);
  if (n == 1) return 0.0;
  if (std::fabs(lambda) < 1e-6 || !closed_form_ok(n, alpha, lambda)) {
    return d_n(n, alpha, Jet::variable(1, lambda))[1];
  }
  const ScaledPrime sp = scaled_prime(n, alpha, lambda);
  return std::exp((n + 1.0) * sp.log_g1) * sp.dprime;
}

double log_derivative_d_n(int n, double alpha, double lambda) {
  require_args(n, alpha);
  if (n == 1) return 0.0;
  if (std::fabs(lambda) < 1e-6 || !closed_form_ok(n, alpha, lambda)) {
    const Jet d = d_n(n, alpha, Jet::variable(1, lambda));
    return d[1] / d[0];
  }
  const ScaledPrime sp = scaled_prime(n, alpha, lambda);
  return sp.dprime / sp.d;
}

RLHelpers r_l_helpers(int m, double lambda, double alpha) {
  if (m < -1) throw ContractError("r_l_helpers needs m >= -1");
  const double w = (1.0 - alpha) * (1.0 - alpha) - lambda;
  if (std::fabs(w) < 1e-12) {
    throw DomainError("lambda is at the pole (1-alpha)^2; perturb lambda");
  }
  GammaDelta<double> gd{};
  try {
    gd = gamma_delta(lambda, alpha);
  } catch (const BranchPointError&) {
    throw DomainError("Delta(lambda) <= 0 at the branch point; perturb lambda");
  }
  const double s = std::sqrt(gd.delta);
  const double g1m = std::pow(gd.gamma1, m + 1), g2m = std::pow(gd.gamma2, m + 1);
  RLHelpers h{};
  h.p = (g1m - g2m) / s;
  h.r = (g1m + g2m) / gd.delta;
  h.l1 = 1.0 / (gd.delta * w);
  h.l2 = (3.0 * gd.gamma1 + 3.0 * gd.gamma2 + 2.0 * alpha) * h.l1;
  return h;
}

SignedLog det_oracle(int n, double alpha, double lambda) {
  if (n > 400) throw ContractError("det_oracle is limited to n <= 400");
  const KernelMatrix K = build_kernel(n, alpha);
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> M(N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) M[i * N + j] = (i == j ? 1.0 : 0.0) - lambda * K.entries[i * N + j];

  SignedLog out{0.0, 1};
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < N; ++i)
      if (std::fabs(M[i * N + k]) > std::fabs(M[piv * N + k])) piv = i;
    if (M[piv * N + k] == 0.0) return {-INFINITY, 0};
    if (piv != k) {
      for (std::size_t j = 0; j < N; ++j) std::swap(M[k * N + j], M[piv * N + j]);
      out.sign = -out.sign;
    }
    const double p = M[k * N + k];
    if (p < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::fabs(p));
    for (std::size_t i = k + 1; i < N; ++i) {
      const double f = M[i * N + k] / p;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < N; ++j) M[i * N + j] -= f * M[k * N + j];
    }
  }
  return out;
}

double log_d_n_asymptotic(double t, int n, double alpha) {
  if (n < 3) throw ContractError("d_n_asymptotic needs n >= 3");
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  const double a2 = alpha * alpha, b = 1.0 - a2;
  const double ln = std::log(static_cast<double>(n));
  const double t2 = t * t;
  const double quad = (1.0 + a2) * (1.0 + a2) * t2 / (4.0 * b * b * b) + t2 / (2.0 * b * b) - t2 / (4.0 * b);
  return -t * std::sqrt(n * ln) / b - quad * ln;
}

double d_n_asymptotic(double t, int n, double alpha) { return std::exp(log_d_n_asymptotic(t, n, alpha)); }

template GammaDelta<double> gamma_delta<double>(const double&, double);
template GammaDelta<Jet> gamma_delta<Jet>(const Jet&, double);
template double p_poly<double>(int, const double&, double);
template Jet p_poly<Jet>(int, const Jet&, double);
template double d_n<double>(int, double, const double&);
template Jet d_n<Jet>(int, double, const Jet&);
template double log_d_n<double>(int, double, const double&);
template Jet log_d_n<Jet>(int, double, const Jet&);

}  // namespace yule
