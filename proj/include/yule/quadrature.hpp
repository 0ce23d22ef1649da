#pragma once

#include <functional>

namespace yule {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long nodes_used = 0;
  bool converged = false;
};

/// f(s11, s22) on the open quadrant. Must be reentrant.
using Integrand = std::function<double(double, double)>;

/// Integral of f over (0, inf)^2.
///
/// Each axis is mapped by s = u/(1-u) onto (0,1). The unit square starts from a
/// mesh graded geometrically (factor 4) toward u = 0 and is refined adaptively:
/// each panel is bisected along both axes, the bisection with the larger change
/// in the tensor Gauss-Legendre value is kept, and both changes form the error
/// estimate. Cuts on a u = 0 edge are placed at a quarter of the width. The result is bitwise independent of
/// `threads`. Returns converged = false with the best estimate when max_nodes
/// is exhausted; throws NumericError if f returns NaN.
QuadResult integrate_quadrant(const Integrand& f, double tol_rel, double tol_abs,
                              long max_nodes = 2'000'000, int threads = 0);

/// 2 * integral of a symmetric f over {0 < s22 < s11}, via s22 = s11 * v, so no
/// node ever lies on the diagonal.
QuadResult integrate_triangle_symmetric(const Integrand& f, double tol_rel, double tol_abs,
                                        long max_nodes = 2'000'000, int threads = 0);

}  // namespace yule
