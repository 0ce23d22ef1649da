#pragma once

#include "yule/jet.hpp"

namespace yule {

/// gamma_{1,2} = (1 - lambda + alpha^2 +- sqrt(Delta)) / 2 and Delta = (1 - lambda + alpha^2)^2 - 4 alpha^2.
template <class T>
struct GammaDelta {
  T gamma1;
  T gamma2;
  T delta;
};

/// Throws BranchPointError when the constant term of Delta is <= 0.
template <class T>
GammaDelta<T> gamma_delta(const T& lambda, double alpha);

/// p_{-1} = 0, p_0 = 1, p_m = (1 - lambda + alpha^2) p_{m-1} - alpha^2 p_{m-2}.
template <class T>
T p_poly(int m, const T& lambda, double alpha);

/// d_n(lambda) = det(I - lambda K_n). Closed form away from branch points,
/// O(n) recurrence near them.
template <class T>
T d_n(int n, double alpha, const T& lambda);

/// log d_n(lambda); requires d_n > 0 at the constant term (true for lambda <= 0).
template <class T>
T log_d_n(int n, double alpha, const T& lambda);

struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;  // -1, 0 or +1
  double value() const;
};

/// log|d_n(lambda)| and its sign, without overflow for large n.
SignedLog log_abs_d_n(int n, double alpha, double lambda);

/// True when lambda is evaluated by the closed form rather than the recurrence.
bool uses_closed_form(int n, double alpha, double lambda);

/// d_n'(lambda) from the explicit p/r/l1/l2 expression; jet derivative for |lambda| < 1e-6.
double d_n_prime(int n, double alpha, double lambda);

/// d_n'(lambda) / d_n(lambda), evaluated in scaled form (no overflow).
double log_derivative_d_n(int n, double alpha, double lambda);

struct RLHelpers {
  double p;
  double r;
  double l1;
  double l2;
};

/// p_m, r_m = (g1^{m+1} + g2^{m+1})/Delta, l1 = 1/(Delta((1-alpha)^2 - lambda)),
/// l2 = (3 g1 + 3 g2 + 2 alpha) l1, all at argument lambda.
RLHelpers r_l_helpers(int m, double lambda, double alpha);

/// Brute-force determinant of I - lambda K_n by pivoted elimination.
SignedLog det_oracle(int n, double alpha, double lambda);

/// Leading-order value of d_n(t sqrt(n ln n)) for large n, and its logarithm.
double d_n_asymptotic(double t, int n, double alpha);
double log_d_n_asymptotic(double t, int n, double alpha);

extern template GammaDelta<double> gamma_delta<double>(const double&, double);
extern template GammaDelta<Jet> gamma_delta<Jet>(const Jet&, double);
extern template double p_poly<double>(int, const double&, double);
extern template Jet p_poly<Jet>(int, const Jet&, double);
extern template double d_n<double>(int, double, const double&);
extern template Jet d_n<Jet>(int, double, const Jet&);
extern template double log_d_n<double>(int, double, const double&);
extern template Jet log_d_n<Jet>(int, double, const Jet&);

}  // namespace yule
