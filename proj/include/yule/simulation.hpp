#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "yule/rng.hpp"

namespace yule {

enum class Family { gaussian_independent, gaussian_correlated, second_chaos };

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Pair of AR(1) paths X_i = alpha X_{i-1} + xi_i, Y_i = beta Y_{i-1} + eta_i, X_0 = Y_0 = 0.
/// Gaussian families use beta = alpha; r is the innovation correlation of the
/// correlated family; sigma/tau are the chaos weights: xi = sum_d sigma_d (S_d^2 - 1).
struct ModelSpec {
  Family family = Family::gaussian_independent;
  int n = 10;
  double alpha = 0.0;
  double beta = 0.0;
  double r = 0.0;
  std::vector<double> sigma{1.0};
  std::vector<double> tau{1.0};

  static ModelSpec gaussian(int n, double alpha, double r = 0.0);
  static ModelSpec chaos(int n, double alpha, double beta, std::vector<double> sigma, std::vector<double> tau);
  /// Throws ContractError / DomainError on invalid parameters.
  void validate() const;
};

struct PathPair {
  std::vector<double> x;
  std::vector<double> y;
};

struct EmpiricalStats {
  double z11;
  double z12;
  double z22;
  double theta;
};

PathPair simulate_pair(const ModelSpec& spec, Stream& rng);

/// Z11, Z12, Z22 (centred second moments with 1/n) and theta = Z12 / sqrt(Z11 Z22).
/// Throws DomainError on a constant path.
EmpiricalStats empirical_stats(const PathPair& p);

struct ThetaSampleSet {
  ModelSpec spec;
  std::uint64_t seed = 0;
  bool scaled = false;
  std::vector<double> values;
  long redraws = 0;
};

/// reps draws of theta_n (or of the family's standardized statistic when
/// scale = true), replication i using Stream(seed, i).
ThetaSampleSet sample_theta(const ModelSpec& spec, long reps, std::uint64_t seed, bool scale, int threads = 0);

/// Full statistics per replication (same streams as sample_theta).
std::vector<EmpiricalStats> sample_stats(const ModelSpec& spec, long reps, std::uint64_t seed, int threads = 0,
                                         long* redraws = nullptr);

/// The statistic scale_theta maps theta to: c sqrt(n) theta, or c sqrt(n)(theta - r) for the
/// correlated family, with c = scaling_constant(...).
double standardize_theta(const ModelSpec& spec, double theta);

}  // namespace yule
