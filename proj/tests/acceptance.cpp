#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "yule/asymptotics.hpp"
#include "yule/charpoly.hpp"
#include "yule/kernel.hpp"
#include "yule/mgf.hpp"
#include "yule/simulation.hpp"

using namespace yule;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s; %.1fs (budget %.0fs%s)\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              budget_s, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string table_detail(const std::vector<cli::TableRow>& rows, bool& all) {
  std::ostringstream os;
  all = true;
  os.precision(7);
  for (const auto& r : rows) {
    if (!r.pass) {
      all = false;
      os << (os.tellp() > 0 ? " " : "") << r.label << ":" << r.computed << " vs " << r.reference << " ("
         << (r.relative ? "rel " : "abs ") << (r.relative ? r.rel_diff : r.abs_diff) << ")";
    }
  }
  if (all) {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, (r.relative ? r.rel_diff : r.abs_diff) / r.tol);
    os << rows.size() << " cells within tolerance, worst at " << worst << " of tolerance";
  } else {
    os << " out of tolerance";
  }
  return os.str();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "Table 1 second moments", 300, [] {
    bool ok;
    const auto d = table_detail(cli::compute_table("table1"), ok);
    return Outcome{ok, d};
  });

  criterion(2, "Table 2 moments (n=30, alpha=0.05)", 600, [] {
    bool ok;
    const auto d = table_detail(cli::compute_table("table2"), ok);
    return Outcome{ok, d};
  });

  criterion(3, "Table 3 moments (n=30, alpha=0.05, r=0.1)", 600, [] {
    bool ok;
    const auto d = table_detail(cli::compute_table("table3"), ok);
    return Outcome{ok, d};
  });

  criterion(4, "closed form vs dense determinant", 60, [] {
    std::mt19937_64 g(20240601);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    int fallback = 0;
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + static_cast<int>(U(g) * 200);
      const double a = -0.95 + 1.9 * U(g);
      const double hi = n > 1 ? 0.5 / largest_eigenvalue(n, a) : 0.5;
      const double l = -50.0 + (hi + 50.0) * U(g);
      const double o = det_oracle(n, a, l).value();
      worst = std::max(worst, std::fabs(d_n(n, a, l) - o) / std::fabs(o));
      if (!uses_closed_form(n, a, l)) ++fallback;
    }
    return Outcome{worst <= 1e-9, fmt("200 triples, worst rel %.2e, %g via recurrence", worst, fallback)};
  });

  criterion(5, "spectral identities", 600, [] {
    const std::vector<double> alphas{-0.9, -0.5, -0.1, 0.0, 0.1, 0.3, 0.5, 0.9};
    double w_tr = 0, w_sq = 0, w_pr = 0;
    int viol4 = 0, violg = 0;
    for (int n = 2; n <= 100; ++n)
      for (double a : alphas) {
        const auto s = eigen_sym(build_kernel(n, a));
        w_tr = std::max(w_tr, std::fabs(s.sum - trace_identity(n, a).sum_lambda));
        const double sq = squared_sum_identity(n, a).sum_lambda_sq;
        w_sq = std::max(w_sq, std::fabs(s.sum_sq - sq) / sq);
        const auto cp = closed_product(n, a);
        w_pr = std::max(w_pr, std::fabs(std::expm1(s.log_positive_product - cp.log_product)));
        const auto q = quartic_sum_bound(n, a);
        if (!(q.sum_lambda_4 <= q.bound)) ++viol4;
        if (!(cp.geometric_mean_stat >= 0.25)) ++violg;
      }
    const bool ok = w_tr <= 1e-12 && w_sq <= 1e-11 && w_pr <= 1e-6 && viol4 == 0 && violg == 0;
    return Outcome{ok, fmt("trace %.1e abs, squares %.1e rel, product %.1e rel", w_tr, w_sq, w_pr) +
                           fmt(", quartic violations %g, geomean violations %g", viol4, violg)};
  });

  criterion(6, "d_n' display vs jet derivative", 60, [] {
    std::mt19937_64 g(777);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const int n = 2 + static_cast<int>(U(g) * 200);
      const double a = -0.95 + 1.9 * U(g);
      const double hi = 0.5 / largest_eigenvalue(n, a);
      const double l = -50.0 + (hi + 50.0) * U(g);
      const double jd = extract_derivative(d_n(n, a, Jet::variable(1, l)), 1);
      worst = std::max(worst, std::fabs(d_n_prime(n, a, l) - jd) / std::fabs(jd));
    }
    return Outcome{worst <= 1e-9, fmt("500 points, worst rel %.2e", worst)};
  });

  criterion(7, "MGF sanity", 60, [] {
    const double p0 = phi_n(30, 0.05, MgfInputs{0.0, 0.0, 0.0, 0.0});
    double w_s = 0.0;
    for (double s : {1e-3, 0.1, 1.0, 10.0, 1e3})
      w_s = std::max(w_s, std::fabs(phi_n(30, 0.05, MgfInputs{s, 0.0, 0.0, 0.0}) * std::sqrt(d_n(30, 0.05, -s)) - 1.0));
    double w_odd = 0.0;
    for (int n : {10, 30, 200}) {
      const PhiExpansion ex(n, 0.05, 0.0, 10);
      for (double s11 = 1e-4; s11 < 1e4; s11 *= 3.7)
        for (double s22 = 1e-4; s22 < 1e4; s22 *= 2.9) {
          const Jet j = ex.at(s11, s22);
          for (int k = 1; k <= 9; k += 2) w_odd = std::max(w_odd, std::fabs(j[k]));
        }
    }
    const bool ok = std::fabs(p0 - 1.0) <= 1e-15 && w_s <= 1e-13 && w_odd <= 1e-13;
    return Outcome{ok, fmt("phi(0,0,0)-1 = %.1e, phi(s,0,0) rel %.1e, max odd coefficient %.1e", p0 - 1.0, w_s, w_odd)};
  });

  criterion(8, "Monte Carlo vs Table 1 at n=10", 120, [] {
    const auto st = sample_stats(ModelSpec::gaussian(10, 0.1), 1'000'000, 8);
    double s = 0, s2 = 0;
    for (const auto& e : st) {
      const double v = 10.0 * e.theta * e.theta;
      s += v;
      s2 += v * v;
    }
    const double N = 1e6, m = s / N, se = std::sqrt((s2 / N - m * m) / N);
    const double z = (m - 1.122613) / se;
    return Outcome{std::fabs(z) <= 4.0, fmt("mean %.6f, se %.6f, z %.2f", m, se, z)};
  });

  criterion(9, "convergence-rate slopes", 900, [] {
    const std::vector<int> ns{50, 100, 200, 400, 800, 1600, 3200};
    const auto rep = rate_fit(ModelSpec::gaussian(50, 0.1), ns, 100'000, 9);
    const auto good = [](const RateFit& f) { return f.slope >= -0.65 && f.slope <= -0.35 && f.residual < 0.15; };
    std::string d = fmt("Kolmogorov slope %.3f resid %.3f, W1 slope %.3f resid %.3f", rep.kolmogorov.slope,
                        rep.kolmogorov.residual, rep.wasserstein.slope, rep.wasserstein.residual);
    d += "; KS";
    for (double x : rep.kolmogorov.distances) d += fmt(" %.4f", x);
    d += "; W1";
    for (double x : rep.wasserstein.distances) d += fmt(" %.4f", x);
    return Outcome{good(rep.kolmogorov) && good(rep.wasserstein), d};
  });

  criterion(10, "correlated centering", 600, [] {
    const ModelSpec spec = ModelSpec::gaussian(1600, 0.1, 0.3);
    const auto raw = sample_theta(spec, 100'000, 10, false);
    double s = 0, s2 = 0;
    for (double t : raw.values) {
      s += t;
      s2 += t * t;
    }
    const double N = 1e5, m = s / N, se = std::sqrt((s2 / N - m * m) / N);
    std::vector<double> scaled;
    for (double t : raw.values) scaled.push_back(standardize_theta(spec, t));
    const double ks = kolmogorov_distance(scaled);
    return Outcome{std::fabs(m - 0.3) <= 4 * se && ks <= 0.03,
                   fmt("mean theta %.5f (se %.5f, z %.2f), Kolmogorov %.4f", m, se, (m - 0.3) / se, ks)};
  });

  criterion(11, "second-chaos variances", 900, [] {
    const ModelSpec spec = ModelSpec::chaos(4000, 0.3, 0.3, {1.0, 0.5}, {1.0, 0.5});
    const auto st = sample_stats(spec, 100'000, 11);
    const auto cc = chaos_constants(0.3, 0.3, {1.0, 0.5}, {1.0, 0.5});
    const double rn = std::sqrt(4000.0), N = 1e5;
    double t1 = 0, t2 = 0, z1 = 0, z2 = 0, z4 = 0;
    for (const auto& e : st) {
      const double t = rn * e.theta, z = rn * e.z12;
      t1 += t;
      t2 += t * t;
      z1 += z;
      z2 += z * z;
      z4 += z * z * z * z;
    }
    const double vt = t2 / N - (t1 / N) * (t1 / N);
    const double vz = z2 / N - (z1 / N) * (z1 / N);
    const double target_t = 1.09 / 0.91, target_z = 4 * cc.M3;
    const double ez2 = z2 / N, se_ez2 = std::sqrt((z4 / N - ez2 * ez2) / N);
    const bool ok = std::fabs(vt / target_t - 1) <= 0.03 && std::fabs(vz / target_z - 1) <= 0.03 &&
                    std::fabs(ez2 - target_z) <= cc.deviation_bound(4000) + 4 * se_ez2;
    return Outcome{ok, fmt("var sqrt(n) theta %.4f vs %.4f, var sqrt(n) Z12 %.4f vs 4M3 %.4f", vt, target_t, vz,
                           target_z) +
                           fmt(", |E-4M3| %.4f vs bound %.4f + 4se %.4f", std::fabs(ez2 - target_z),
                               cc.deviation_bound(4000), 4 * se_ez2)};
  });

  criterion(12, "size and power", 900, [] {
    const double ca = auto_critical_value(0.1);
    const double size = mc_power(200, 0.1, 0.0, ca, 100'000, 12);
    const double p100 = mc_power(100, 0.1, 0.3, ca, 100'000, 13);
    const double p400 = mc_power(400, 0.1, 0.3, ca, 100'000, 14);
    const double p1600 = mc_power(1600, 0.1, 0.3, ca, 100'000, 15);
    const bool ok = std::fabs(size - 0.05) <= 0.005 && p100 <= p400 && p400 <= p1600 && p1600 > 0.999;
    return Outcome{ok, fmt("size %.4f; power n=100 %.4f, n=400 %.4f, n=1600 %.5f", size, p100, p400, p1600)};
  });

  criterion(13, "d_n asymptotics at n=1e6", 60, [] {
    const int n = 1'000'000;
    double lo = 10, hi = -10;
    for (double a : {0.0, 0.1, 0.5})
      for (double t : {0.5, 1.0, 2.0}) {
        const double lam = t * std::sqrt(n * std::log(static_cast<double>(n)));
        const double ratio = log_d_n(n, a, lam) / log_d_n_asymptotic(t, n, a);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    return Outcome{lo >= 0.98 && hi <= 1.02, fmt("log ratios in [%.5f, %.5f]", lo, hi)};
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
