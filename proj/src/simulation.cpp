#include "yule/simulation.hpp"

#include <cmath>

#include "yule/asymptotics.hpp"
#include "yule/errors.hpp"
#include "yule/parallel.hpp"

namespace yule {

namespace {

// Online centred co-moments of (x, y).
struct CoMoments {
  long k = 0;
  double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;

  void add(double x, double y) {
    ++k;
    const double dx = x - mx, dy = y - my;
    mx += dx / k;
    my += dy / k;
    const double ex = x - mx, ey = y - my;
    sxx += dx * ex;
    syy += dy * ey;
    sxy += dx * ey;
  }
};

class InnovationSource {
 public:
  explicit InnovationSource(const ModelSpec& s) : spec_(s), rho_c_(std::sqrt(1.0 - s.r * s.r)) {}

  void next(Stream& rng, double& xi, double& eta) const {
    switch (spec_.family) {
      case Family::gaussian_independent:
        xi = rng.normal();
        eta = rng.normal();
        return;
      case Family::gaussian_correlated: {
        xi = rng.normal();
        const double zeta = rng.normal();
        eta = spec_.r * xi + rho_c_ * zeta;
        return;
      }
      case Family::second_chaos:
        xi = chaos(rng, spec_.sigma);
        eta = chaos(rng, spec_.tau);
        return;
    }
  }

 private:
  static double chaos(Stream& rng, const std::vector<double>& w) {
    double v = 0.0;
    for (double s : w) {
      const double z = rng.normal();
      v += s * (z * z - 1.0);
    }
    return v;
  }

  const ModelSpec& spec_;
  double rho_c_;
};

EmpiricalStats finish(const CoMoments& c) {
  const double n = static_cast<double>(c.k);
  EmpiricalStats st{c.sxx / n, c.sxy / n, c.syy / n, 0.0};
  if (!(st.z11 > 0.0) || !(st.z22 > 0.0)) throw DomainError("degenerate sample: zero empirical variance");
  st.theta = st.z12 / std::sqrt(st.z11 * st.z22);
  st.theta = std::max(-1.0, std::min(1.0, st.theta));
  return st;
}

EmpiricalStats draw_stats(const ModelSpec& spec, const InnovationSource& src, Stream& rng, long& redraws) {
  const double beta = spec.family == Family::second_chaos ? spec.beta : spec.alpha;
  for (;;) {
    CoMoments c;
    double x = 0.0, y = 0.0, xi = 0.0, eta = 0.0;
    for (int i = 0; i < spec.n; ++i) {
      src.next(rng, xi, eta);
      x = spec.alpha * x + xi;
      y = beta * y + eta;
      c.add(x, y);
    }
    try {
      return finish(c);
    } catch (const DomainError&) {
      ++redraws;
    }
  }
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "gaussian_independent") return Family::gaussian_independent;
  if (name == "gaussian_correlated") return Family::gaussian_correlated;
  if (name == "second_chaos") return Family::second_chaos;
  throw ContractError("unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::gaussian_independent:
      return "gaussian_independent";
    case Family::gaussian_correlated:
      return "gaussian_correlated";
    case Family::second_chaos:
      return "second_chaos";
  }
  return "unknown";
}

ModelSpec ModelSpec::gaussian(int n, double alpha, double r) {
  ModelSpec s;
  s.family = r == 0.0 ? Family::gaussian_independent : Family::gaussian_correlated;
  s.n = n;
  s.alpha = s.beta = alpha;
  s.r = r;
  return s;
}

ModelSpec ModelSpec::chaos(int n, double alpha, double beta, std::vector<double> sigma, std::vector<double> tau) {
  ModelSpec s;
  s.family = Family::second_chaos;
  s.n = n;
  s.alpha = alpha;
  s.beta = beta;
  s.sigma = std::move(sigma);
  s.tau = std::move(tau);
  return s;
}

void ModelSpec::validate() const {
  if (n < 2) throw ContractError("n must be >= 2");
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
  if (family == Family::second_chaos) {
    if (!(std::fabs(beta) < 1.0)) throw DomainError("|beta| must be < 1");
    if (sigma.empty() || tau.empty()) throw ContractError("chaos weights must be nonempty");
    for (double w : sigma)
      if (!std::isfinite(w)) throw ContractError("chaos weights must be finite");
    for (double w : tau)
      if (!std::isfinite(w)) throw ContractError("chaos weights must be finite");
  } else {
    if (beta != alpha) throw ContractError("gaussian families require beta == alpha");
    if (!(std::fabs(r) <= 1.0)) throw DomainError("|r| must be <= 1");
    if (family == Family::gaussian_independent && r != 0.0)
      throw ContractError("gaussian_independent requires r == 0");
  }
}

PathPair simulate_pair(const ModelSpec& spec, Stream& rng) {
  spec.validate();
  const InnovationSource src(spec);
  const double beta = spec.family == Family::second_chaos ? spec.beta : spec.alpha;
  PathPair p;
  p.x.resize(static_cast<std::size_t>(spec.n));
  p.y.resize(static_cast<std::size_t>(spec.n));
  double x = 0.0, y = 0.0, xi = 0.0, eta = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    src.next(rng, xi, eta);
    x = spec.alpha * x + xi;
    y = beta * y + eta;
    p.x[i] = x;
    p.y[i] = y;
  }
  return p;
}

EmpiricalStats empirical_stats(const PathPair& p) {
  if (p.x.size() != p.y.size()) throw ContractError("paths must have equal length");
  if (p.x.size() < 2) throw ContractError("empirical_stats needs n >= 2");
  CoMoments c;
  for (std::size_t i = 0; i < p.x.size(); ++i) c.add(p.x[i], p.y[i]);
  return finish(c);
}

std::vector<EmpiricalStats> sample_stats(const ModelSpec& spec, long reps, std::uint64_t seed, int threads,
                                         long* redraws) {
  spec.validate();
  if (reps < 1) throw ContractError("reps must be >= 1");
  const InnovationSource src(spec);
  std::vector<EmpiricalStats> out(static_cast<std::size_t>(reps));
  const int workers = resolve_threads(threads);
  std::vector<long> extra(static_cast<std::size_t>(workers), 0);
  const std::size_t chunks = static_cast<std::size_t>(workers);
  parallel_for(chunks, workers, [&](std::size_t w) {
    const std::size_t lo = out.size() * w / chunks, hi = out.size() * (w + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) {
      Stream rng(seed, i);
      out[i] = draw_stats(spec, src, rng, extra[w]);
    }
  });
  if (redraws) {
    *redraws = 0;
    for (long e : extra) *redraws += e;
  }
  return out;
}

double standardize_theta(const ModelSpec& spec, double theta) {
  const double c = scaling_constant(spec.family, spec.alpha, spec.beta, spec.r);
  const double root_n = std::sqrt(static_cast<double>(spec.n));
  if (spec.family == Family::gaussian_correlated) return c * root_n * (theta - spec.r);
  return c * root_n * theta;
}

ThetaSampleSet sample_theta(const ModelSpec& spec, long reps, std::uint64_t seed, bool scale, int threads) {
  ThetaSampleSet set;
  set.spec = spec;
  set.seed = seed;
  set.scaled = scale;
  const auto stats = sample_stats(spec, reps, seed, threads, &set.redraws);
  set.values.reserve(stats.size());
  for (const auto& s : stats) set.values.push_back(scale ? standardize_theta(spec, s.theta) : s.theta);
  return set;
}

}  // namespace yule
