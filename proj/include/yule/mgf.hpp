#pragma once

#include "yule/jet.hpp"
#include "yule/quadrature.hpp"

namespace yule {

/// Point (s11, s12, s22) of the joint MGF; r is the innovation correlation
/// (0 for independent paths).
template <class T>
struct MgfInputsT {
  double s11 = 0.0;
  T s12{};
  double s22 = 0.0;
  double r = 0.0;
};
using MgfInputs = MgfInputsT<double>;
using JetMgfInputs = MgfInputsT<Jet>;

template <class T>
struct RhoUpsilon {
  T rho;
  T upsilon;
};

/// rho, upsilon = -(s11 + s22 + 2 r s12 +- sqrt(R)) / 2 with
/// R = (s11 - s22)^2 + 4 (r s11 + s12)(r s22 + s12). Throws DomainError when |r| > 1,
/// s11 < 0, s22 < 0 or R < 0,
/// or when R = 0 for a jet (the square root is not differentiable there).
template <class T>
RhoUpsilon<T> rho_upsilon(const MgfInputsT<T>& in);

/// phi_n = (d_n(rho) d_n(upsilon))^{-1/2}.
template <class T>
T phi_n(int n, double alpha, const MgfInputsT<T>& in);

/// Taylor expansion of phi_n in s12 around s12 = 0, for fixed (s11, s22).
///
/// Away from the diagonal this is phi_n on jets. Near it, the square root in
/// rho/upsilon is avoided: with c = -(s11 + s22 + 2 r s12)/2 and
/// H = R/4, log(d(c + sqrt H) d(c - sqrt H)) = sum_j F_j ((c~ + sqrt H)^j + (c~ - sqrt H)^j),
/// where F_j are Taylor coefficients of log d_n at the constant part of c, and
/// the bracket is a polynomial in c~ and H.
class PhiExpansion {
 public:
  PhiExpansion(int n, double alpha, double r, int order);

  Jet at(double s11, double s22) const;
  /// Whether at() uses the symmetric series at this point.
  bool uses_series(double s11, double s22) const;

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double r() const { return r_; }
  int order() const { return order_; }

 private:
  double ratio(double s11, double s22) const;
  int n_;
  double alpha_;
  double r_;
  int order_;
  double inv_lambda1_;
};

struct MomentOptions {
  double tol_rel = 0.0;  // <= 0 selects the per-order default
  double tol_abs = 1e-13;
  long max_nodes = 2'000'000;
  int threads = 0;
};

struct MomentResult {
  int m = 0;
  int n = 0;
  double alpha = 0.0;
  double r = 0.0;
  double value = 0.0;  // E[(sqrt(n) theta_n)^m]
  QuadResult quad;
};

/// Default relative tolerance: 1e-7 for m <= 4, 1e-5 above.
double default_tol_rel(int m);

/// E[(sqrt(n) theta_n)^m] for 0 <= m <= 10 from the double-integral moment formula.
MomentResult moment(int m, int n, double alpha, double r, const MomentOptions& opts = {});

/// E[(sqrt(n) theta_n)^2] from the d_n'/d_n difference-quotient integral.
MomentResult second_moment_scaled(int n, double alpha, const MomentOptions& opts = {});

/// (1 + alpha^2) / (1 - alpha^2).
double limit_second_moment(double alpha);

/// Integrand of second_moment_scaled at (s11, s22), exposed for testing.
double second_moment_integrand(int n, double alpha, double s11, double s22);

extern template RhoUpsilon<double> rho_upsilon<double>(const MgfInputsT<double>&);
extern template RhoUpsilon<Jet> rho_upsilon<Jet>(const MgfInputsT<Jet>&);
extern template double phi_n<double>(int, double, const MgfInputsT<double>&);
extern template Jet phi_n<Jet>(int, double, const MgfInputsT<Jet>&);

}  // namespace yule
