#pragma once

#include <vector>

namespace yule {

/// Density on [a, b] as a Legendre series in y = (2x - a - b)/(b - a):
/// f(x) = (2/(b-a)) sum_j coeffs[j] P_j(y).
struct DensityApprox {
  double a = -5.0;
  double b = 5.0;
  std::vector<double> coeffs;
  int order = 0;
};

/// Projection onto Legendre polynomials from raw moments m_0..m_K (m_0 = 1).
DensityApprox legendre_from_moments(const std::vector<double>& moments, double a = -5.0, double b = 5.0);

/// Clenshaw evaluation; zero outside [a, b]. Negative values are returned as is.
double evaluate_density(const DensityApprox& d, double x);

/// Raw moments 0..k_max of the (signed) approximation, by Gauss-Legendre quadrature.
std::vector<double> density_moments(const DensityApprox& d, int k_max);

/// `points` equally spaced samples (x, f(x)) over the support.
std::vector<std::pair<double, double>> density_grid(const DensityApprox& d, int points = 401);

}  // namespace yule
