#pragma once

#include <cstdint>
#include <vector>

#include "yule/simulation.hpp"

namespace yule {

enum class Distance { kolmogorov, wasserstein1 };

/// sup_z |F_N(z) - Phi(z)| over the empirical CDF of the samples.
double kolmogorov_distance(std::vector<double> samples);
/// (1/N) sum_i |x_(i) - Phi^{-1}((i - 1/2)/N)|.
double wasserstein1_distance(std::vector<double> samples);

/// Constant that standardizes sqrt(n) theta_n (or sqrt(n)(theta_n - r)) to N(0, 1).
double scaling_constant(Family family, double alpha, double beta, double r);

struct RateFit {
  std::vector<int> ns;
  std::vector<double> distances;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual in log space
  /// Fit of log(d sqrt(n / ln n)) against log n: slope near 0 when d ~ sqrt(ln n / n).
  double log_corrected_slope = 0.0;
  double log_corrected_mean = 0.0;
};

/// Least-squares fit of log d = slope log n + intercept.
RateFit fit_rate(const std::vector<int>& ns, const std::vector<double>& distances);

struct RateReport {
  RateFit kolmogorov;
  RateFit wasserstein;
};

/// Draws `reps` scaled samples per n (seed shared, streams keyed by replication) and fits both distances.
RateReport rate_fit(const ModelSpec& spec, const std::vector<int>& ns, long reps, std::uint64_t seed, int threads = 0);

struct ChaosConstants {
  double M3;
  double M4;
  double M5;
  double C25;
  double C26;

  /// (4 C25 + 12 C26) / n, the bound on |E[(sqrt(n) Z12)^2] - 4 M3|.
  double deviation_bound(int n) const;
};

ChaosConstants chaos_constants(double alpha, double beta, const std::vector<double>& sigma,
                               const std::vector<double>& tau);

/// Gaussian-approximation power bound; C13 = 0 drops the non-explicit remainder.
double power_lower_bound(int n, double alpha, double r, double c_a, double C13 = 0.0);

/// z_{0.975} sqrt((1 + alpha^2)/(1 - alpha^2)).
double auto_critical_value(double alpha);

/// Fraction of correlated-family replications with |sqrt(n) theta_n| > c_a.
double mc_power(int n, double alpha, double r, double c_a, long reps, std::uint64_t seed, int threads = 0);

}  // namespace yule
