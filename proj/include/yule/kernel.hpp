#pragma once

#include <vector>

namespace yule {

/// The n x n kernel K_n with Z12 = Xi^T K_n H for AR(1) innovation vectors.
struct KernelMatrix {
  int n = 0;
  double alpha = 0.0;
  std::vector<double> entries;  // row-major, 0-indexed

  double operator()(int j, int k) const {
    return entries[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(k)];
  }
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;  // descending
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_4 = 0.0;
  /// Sum of log of the n-1 largest eigenvalues (log of the positive product).
  double log_positive_product = 0.0;
  double positive_product = 0.0;
  /// max |Q diag(lambda) Q^T - K|.
  double reconstruction_error = 0.0;
  int sweeps = 0;
};

struct TraceIdentity {
  double sum_lambda;
  double kappa1;
};

struct SquaredSumIdentity {
  double sum_lambda_sq;
  double kappa2;
};

struct QuarticSumBound {
  double sum_lambda_4;
  double bound;
};

struct ClosedProduct {
  double product;
  double log_product;
  /// (n-1) * (prod lambda)^{1/(n-1)}.
  double geometric_mean_stat;
};

struct RateConstants {
  double C1, C2, C3, C4, C5, C6;
};

KernelMatrix build_kernel(int n, double alpha);

/// Cyclic Jacobi with threshold sweeps, at most 30 sweeps.
SpectrumSummary eigen_sym(const KernelMatrix& K);

/// Largest eigenvalue of K_n (tridiagonal-reduction solver, suitable for large n).
double largest_eigenvalue(int n, double alpha);

TraceIdentity trace_identity(int n, double alpha);
SquaredSumIdentity squared_sum_identity(int n, double alpha);
/// Numeric sum of lambda^4 and C3(alpha) n^-3; throws NumericError if the bound fails.
QuarticSumBound quartic_sum_bound(int n, double alpha);
/// Throws NumericError if the geometric-mean statistic falls below 1/4.
ClosedProduct closed_product(int n, double alpha);
RateConstants rate_constants(double alpha);

}  // namespace yule
