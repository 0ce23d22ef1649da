#include "yule/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "yule/errors.hpp"
#include "yule/stats.hpp"

namespace yule {

double kolmogorov_distance(std::vector<double> samples) {
  if (samples.empty()) throw ContractError("kolmogorov_distance needs samples");
  std::sort(samples.begin(), samples.end());
  const double N = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = normal_cdf(samples[i]);
    d = std::max({d, std::fabs((i + 1) / N - F), std::fabs(i / N - F)});
  }
  return d;
}

double wasserstein1_distance(std::vector<double> samples) {
  if (samples.empty()) throw ContractError("wasserstein1_distance needs samples");
  std::sort(samples.begin(), samples.end());
  const double N = static_cast<double>(samples.size());
  double s = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) s += std::fabs(samples[i] - normal_quantile((i + 0.5) / N));
  return s / N;
}

double scaling_constant(Family family, double alpha, double beta, double r) {
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  switch (family) {
    case Family::gaussian_independent:
      return std::sqrt((1.0 - alpha * alpha) / (1.0 + alpha * alpha));
    case Family::gaussian_correlated:
      if (!(std::fabs(r) < 1.0)) throw DomainError("degenerate correlated family: |r| = 1");
      return std::sqrt((1.0 - alpha * alpha) / (1.0 + alpha * alpha)) / (1.0 - r * r);
    case Family::second_chaos:
      if (!(std::fabs(beta) < 1.0)) throw DomainError("|beta| must be < 1");
      return std::sqrt((1.0 - alpha * beta) / (1.0 + alpha * beta));
  }
  throw ContractError("unknown family");
}

namespace {

void least_squares(const std::vector<double>& x, const std::vector<double>& y, double& slope, double& intercept,
                   double& rms) {
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  slope = sxy / sxx;
  intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    ss += e * e;
  }
  rms = std::sqrt(ss / k);
}

}  // namespace

RateFit fit_rate(const std::vector<int>& ns, const std::vector<double>& distances) {
  if (ns.size() != distances.size()) throw ContractError("ns and distances differ in length");
  if (ns.size() < 4) throw ContractError("rate fit needs at least 4 sample sizes");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2 || (i > 0 && ns[i] <= ns[i - 1])) throw ContractError("ns must be strictly increasing and >= 2");
    if (!(distances[i] > 0.0)) throw DomainError("distances must be positive");
  }
  RateFit fit;
  fit.ns = ns;
  fit.distances = distances;
  std::vector<double> x, y, yc;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = ns[i];
    x.push_back(std::log(n));
    y.push_back(std::log(distances[i]));
    yc.push_back(std::log(distances[i] * std::sqrt(n / std::log(n))));
  }
  least_squares(x, y, fit.slope, fit.intercept, fit.residual);
  double ci, cr;
  least_squares(x, yc, fit.log_corrected_slope, ci, cr);
  fit.log_corrected_mean = std::accumulate(yc.begin(), yc.end(), 0.0) / static_cast<double>(yc.size());
  fit.log_corrected_mean = std::exp(fit.log_corrected_mean);
  return fit;
}

RateReport rate_fit(const ModelSpec& spec, const std::vector<int>& ns, long reps, std::uint64_t seed, int threads) {
  std::vector<double> kol, w1;
  for (int n : ns) {
    ModelSpec s = spec;
    s.n = n;
    const auto set = sample_theta(s, reps, seed, true, threads);
    kol.push_back(kolmogorov_distance(set.values));
    w1.push_back(wasserstein1_distance(set.values));
  }
  return {fit_rate(ns, kol), fit_rate(ns, w1)};
}

double ChaosConstants::deviation_bound(int n) const {
  if (n < 1) throw ContractError("n must be >= 1");
  return (4.0 * C25 + 12.0 * C26) / n;
}

ChaosConstants chaos_constants(double alpha, double beta, const std::vector<double>& sigma,
                               const std::vector<double>& tau) {
  if (sigma.empty() || tau.empty()) throw ContractError("chaos weights must be nonempty");
  if (!(std::fabs(alpha) < 1.0) || !(std::fabs(beta) < 1.0)) throw DomainError("|alpha|, |beta| must be < 1");
  double s2 = 0.0, s4 = 0.0, t2 = 0.0, t4 = 0.0;
  for (double w : sigma) {
    s2 += w * w;
    s4 += w * w * w * w;
  }
  for (double w : tau) {
    t2 += w * w;
    t4 += w * w * w * w;
  }
  const double a2 = alpha * alpha, b2 = beta * beta, ab = alpha * beta;
  const double W = s2 * t2;
  ChaosConstants c{};
  c.M3 = (1.0 + ab) / ((1.0 - ab) * (1.0 - a2) * (1.0 - b2)) * W;
  c.M4 = 36.0 / ((1.0 - a2) * (1.0 - a2)) * s4 + 4.0 * (1.0 + a2) / std::pow(1.0 - a2, 3) * s2 * s2;
  c.M5 = 36.0 / ((1.0 - b2) * (1.0 - b2)) * t4 + 4.0 * (1.0 + b2) / std::pow(1.0 - b2, 3) * t2 * t2;
  c.C25 = (a2 + b2 - 2.0 * a2 * b2) / ((1.0 - a2) * (1.0 - a2) * (1.0 - b2) * (1.0 - b2)) * W +
          2.0 * std::fabs(ab) / ((1.0 - ab) * (1.0 - a2) * (1.0 - b2)) *
              (a2 / (1.0 - a2) + b2 / (1.0 - b2) + 1.0 / (1.0 - std::fabs(ab))) * W;
  c.C26 = (2.0 + 2.0 * std::fabs(alpha)) * (2.0 + 2.0 * std::fabs(beta)) /
          ((1.0 - alpha) * (1.0 - a2) * (1.0 - beta) * (1.0 - b2)) * W;
  return c;
}

double power_lower_bound(int n, double alpha, double r, double c_a, double C13) {
  if (n < 2) throw ContractError("n must be >= 2");
  if (!(c_a > 0.0)) throw ContractError("c_a must be positive");
  const double kappa = scaling_constant(Family::gaussian_correlated, alpha, alpha, r);
  const double rn = std::sqrt(static_cast<double>(n)) * r;
  return normal_tail(kappa * (c_a - rn)) + normal_tail(kappa * (c_a + rn)) -
         2.0 * C13 * std::sqrt(std::log(static_cast<double>(n)) / n);
}

double auto_critical_value(double alpha) {
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  return normal_quantile(0.975) * std::sqrt((1.0 + alpha * alpha) / (1.0 - alpha * alpha));
}

double mc_power(int n, double alpha, double r, double c_a, long reps, std::uint64_t seed, int threads) {
  if (!(c_a > 0.0)) throw ContractError("c_a must be positive");
  ModelSpec spec = ModelSpec::gaussian(n, alpha, r);
  const auto set = sample_theta(spec, reps, seed, false, threads);
  const double root_n = std::sqrt(static_cast<double>(n));
  long hits = 0;
  for (double t : set.values)
    if (std::fabs(root_n * t) > c_a) ++hits;
  return static_cast<double>(hits) / static_cast<double>(set.values.size());
}

}  // namespace yule
