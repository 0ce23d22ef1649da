#include "yule/density.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "yule/errors.hpp"

namespace yule {

namespace {

// Power-basis coefficients of P_0..P_K: row j holds P_j(y) = sum_k p[j][k] y^k.
std::vector<std::vector<double>> legendre_power_table(int K) {
  std::vector<std::vector<double>> p(static_cast<std::size_t>(K) + 1,
                                     std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0));
  p[0][0] = 1.0;
  if (K >= 1) p[1][1] = 1.0;
  for (int j = 1; j < K; ++j) {
    for (int k = 0; k <= K; ++k) {
      double v = -static_cast<double>(j) * p[j - 1][k];
      if (k >= 1) v += (2.0 * j + 1.0) * p[j][k - 1];
      p[j + 1][k] = v / (j + 1.0);
    }
  }
  return p;
}

}  // namespace

DensityApprox legendre_from_moments(const std::vector<double>& moments, double a, double b) {
  if (moments.empty()) throw ContractError("legendre_from_moments needs at least one moment");
  if (!(a < b)) throw ContractError("degenerate support: need a < b");
  if (std::fabs(moments[0] - 1.0) > 1e-12) throw ContractError("moment m_0 must equal 1");
  for (double m : moments)
    if (!std::isfinite(m)) throw ContractError("moments must be finite");

  const int K = static_cast<int>(moments.size()) - 1;
  // Moments of Y = s X + t with s = 2/(b-a), t = -(a+b)/(b-a).
  const double s = 2.0 / (b - a), t = -(a + b) / (b - a);
  std::vector<double> my(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    double acc = 0.0, binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      acc += binom * std::pow(s, i) * std::pow(t, k - i) * moments[i];
      binom = binom * (k - i) / (i + 1.0);
    }
    my[k] = acc;
  }

  const auto P = legendre_power_table(K);
  DensityApprox d;
  d.a = a;
  d.b = b;
  d.order = K;
  d.coeffs.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (int j = 0; j <= K; ++j) {
    double e = 0.0;
    for (int k = 0; k <= j; ++k) e += P[j][k] * my[k];
    d.coeffs[j] = 0.5 * (2.0 * j + 1.0) * e;
  }
  return d;
}

double evaluate_density(const DensityApprox& d, double x) {
  if (x < d.a || x > d.b) return 0.0;
  const double y = (2.0 * x - d.a - d.b) / (d.b - d.a);
  const int K = d.order;
  double b1 = 0.0, b2 = 0.0;
  for (int k = K; k >= 1; --k) {
    const double alpha_k = (2.0 * k + 1.0) * y / (k + 1.0);
    const double beta_k1 = -(k + 1.0) / (k + 2.0);
    const double bk = d.coeffs[k] + alpha_k * b1 + beta_k1 * b2;
    b2 = b1;
    b1 = bk;
  }
  const double sum = d.coeffs[0] + y * b1 - 0.5 * b2;
  return sum * 2.0 / (d.b - d.a);
}

std::vector<double> density_moments(const DensityApprox& d, int k_max) {
  using G = boost::math::quadrature::gauss<double, 40>;
  std::vector<double> out(static_cast<std::size_t>(k_max) + 1, 0.0);
  const double mid = 0.5 * (d.a + d.b), half = 0.5 * (d.b - d.a);
  const auto& xs = G::abscissa();
  const auto& ws = G::weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int sgn : {-1, 1}) {
      if (xs[i] == 0.0 && sgn < 0) continue;
      const double x = mid + sgn * half * xs[i];
      const double w = ws[i] * half * evaluate_density(d, x);
      double p = 1.0;
      for (int k = 0; k <= k_max; ++k) {
        out[k] += w * p;
        p *= x;
      }
    }
  }
  return out;
}

std::vector<std::pair<double, double>> density_grid(const DensityApprox& d, int points) {
  if (points < 2) throw ContractError("density_grid needs at least 2 points");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double x = d.a + (d.b - d.a) * i / (points - 1.0);
    out.emplace_back(x, evaluate_density(d, x));
  }
  return out;
}

}  // namespace yule
