#include "yule/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "yule/errors.hpp"

namespace yule {

namespace {

void require_alpha(double alpha) {
  if (!(std::fabs(alpha) < 1.0)) throw DomainError("|alpha| must be < 1");
}

// sum_{i<k} a^i, i.e. (1 - a^k)/(1 - a) without the subtraction.
double geometric_sum(double a, int k) {
  double s = 0.0, p = 1.0;
  for (int i = 0; i < k; ++i) {
    s += p;
    p *= a;
  }
  return s;
}

}  // namespace

KernelMatrix build_kernel(int n, double alpha) {
  if (n < 1) throw ContractError("n must be >= 1");
  require_alpha(alpha);
  KernelMatrix K;
  K.n = n;
  K.alpha = alpha;
  K.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);

  std::vector<double> u(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) u[k] = geometric_sum(alpha, k);
  std::vector<double> apow(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) apow[k] = apow[k - 1] * alpha;

  const double a2 = alpha * alpha;
  const double inv_n = 1.0 / n;
  for (int j = 1; j <= n; ++j) {
    for (int k = j; k <= n; ++k) {
      // alpha^{|k-j|} - alpha^{k+j} = alpha^{k-j} (1 - alpha^{2j})
      const double v = inv_n * apow[k - j] * geometric_sum(a2, j) - inv_n * inv_n * u[k] * u[j];
      K.entries[static_cast<std::size_t>(j - 1) * n + (k - 1)] = v;
      K.entries[static_cast<std::size_t>(k - 1) * n + (j - 1)] = v;
    }
  }
  return K;
}

SpectrumSummary eigen_sym(const KernelMatrix& K) {
  const int n = K.n;
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> a = K.entries;
  std::vector<double> v(N * N, 0.0);
  for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1.0;
  std::vector<double> d(N), b(N), z(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) d[i] = b[i] = a[i * N + i];

  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * N + j]; };
  auto rotate = [](double& x, double& y, double s, double tau) {
    const double g = x, h = y;
    x = g - s * (h + g * tau);
    y = h + s * (g - h * tau);
  };

  constexpr int kMaxSweeps = 30;
  int sweep = 0;
  bool converged = (n <= 1);
  for (sweep = 1; sweep <= kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += std::fabs(A(p, q));
    if (off == 0.0) {
      converged = true;
      break;
    }
    const double thresh = sweep < 4 ? 0.2 * off / static_cast<double>(N * N) : 0.0;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double g = 100.0 * std::fabs(A(p, q));
        if (sweep > 4 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
            std::fabs(d[q]) + g == std::fabs(d[q])) {
          A(p, q) = 0.0;
          continue;
        }
        if (std::fabs(A(p, q)) <= thresh) continue;
        const double h = d[q] - d[p];
        double t;
        if (std::fabs(h) + g == std::fabs(h)) {
          t = A(p, q) / h;
        } else {
          const double theta = 0.5 * h / A(p, q);
          t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double hh = t * A(p, q);
        z[p] -= hh;
        z[q] += hh;
        d[p] -= hh;
        d[q] += hh;
        A(p, q) = 0.0;
        for (std::size_t j = 0; j < p; ++j) rotate(A(j, p), A(j, q), s, tau);
        for (std::size_t j = p + 1; j < q; ++j) rotate(A(p, j), A(j, q), s, tau);
        for (std::size_t j = q + 1; j < N; ++j) rotate(A(p, j), A(q, j), s, tau);
        for (std::size_t j = 0; j < N; ++j) rotate(v[j * N + p], v[j * N + q], s, tau);
      }
    }
    for (std::size_t p = 0; p < N; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  if (!converged) {
    throw NumericError("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
                       " sweeps (n=" + std::to_string(n) + ")");
  }

  std::vector<std::size_t> idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });

  SpectrumSummary out;
  out.sweeps = sweep;
  out.eigenvalues.resize(N);
  for (std::size_t i = 0; i < N; ++i) out.eigenvalues[i] = d[idx[i]];

  double kmax = 0.0;
  for (double e : K.entries) kmax = std::max(kmax, std::fabs(e));
  double err = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      double r = 0.0;
      for (std::size_t k = 0; k < N; ++k) r += v[i * N + k] * d[k] * v[j * N + k];
      err = std::max(err, std::fabs(r - K.entries[i * N + j]));
    }
  }
  out.reconstruction_error = err;

  for (double e : out.eigenvalues) {
    out.sum += e;
    out.sum_sq += e * e;
    out.sum_4 += e * e * e * e;
  }
  out.log_positive_product = 0.0;
  for (std::size_t i = 0; i + 1 < N; ++i) out.log_positive_product += std::log(out.eigenvalues[i]);
  out.positive_product = std::exp(out.log_positive_product);
  return out;
}

double largest_eigenvalue(int n, double alpha) {
  const KernelMatrix K = build_kernel(n, alpha);
  Eigen::Map<const Eigen::MatrixXd> M(K.entries.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("largest_eigenvalue: solver failed");
  return es.eigenvalues().maxCoeff();
}

TraceIdentity trace_identity(int n, double alpha) {
  if (n < 1) throw ContractError("n must be >= 1");
  require_alpha(alpha);
  const double a = alpha, a2 = a * a;
  const double an = std::pow(a, n), a2n = an * an;
  const double kappa1 = -(a2 * (1.0 - a2n) + (1.0 + a) * (1.0 + a)) / ((1.0 - a2) * (1.0 - a2)) +
                        (2.0 * a * (1.0 + a) * (1.0 - an) - a2 * (1.0 - a2n)) /
                            (n * (1.0 - a) * (1.0 - a) * (1.0 - a2));
  return {1.0 / (1.0 - a2) + kappa1 / n, kappa1};
}

SquaredSumIdentity squared_sum_identity(int n, double alpha) {
  if (n < 1) throw ContractError("n must be >= 1");
  require_alpha(alpha);
  const double a = alpha, a2 = a * a;
  const double b = 1.0 - a2;
  const double a2n2 = std::pow(a, 2 * n + 2);

  // u_k = (1 - a^k)/(1 - a).
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), ak(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    ak[k] = ak[k - 1] * a;
    u[k] = u[k - 1] + ak[k - 1];
  }
  // sum_{j,k} a^{|k-j|} u_j u_k via forward/backward geometric convolutions.
  std::vector<double> fwd(static_cast<std::size_t>(n) + 2, 0.0), bwd(static_cast<std::size_t>(n) + 2, 0.0);
  for (int k = 1; k <= n; ++k) fwd[k] = a * fwd[k - 1] + u[k];
  for (int k = n; k >= 1; --k) bwd[k] = a * bwd[k + 1] + u[k];
  double toeplitz = 0.0, hankel_half = 0.0, tail = 0.0;
  for (int k = 1; k <= n; ++k) {
    toeplitz += u[k] * (fwd[k] + bwd[k] - u[k]);
    hankel_half += ak[k] * u[k];
    tail += u[k] * u[k];
  }
  const double mixed = (toeplitz - hankel_half * hankel_half) / b;

  const double kappa2 = 4.0 * n * a2n2 / (b * b * b) -
                        (4.0 * a2 + a2 * a2 - 4.0 * a2n2 - a2n2 * a2n2) / (b * b * b * b) -
                        (2.0 / n) * mixed + (tail * tail) / (static_cast<double>(n) * n);
  return {(1.0 + a2) / (n * b * b * b) + kappa2 / (static_cast<double>(n) * n), kappa2};
}

QuarticSumBound quartic_sum_bound(int n, double alpha) {
  if (n < 2) throw ContractError("quartic_sum_bound needs n >= 2");
  const SpectrumSummary s = eigen_sym(build_kernel(n, alpha));
  const double bound = rate_constants(alpha).C3 / (static_cast<double>(n) * n * n);
  if (s.sum_4 > bound) {
    throw NumericError("sum of lambda^4 exceeds C3 n^-3 at n=" + std::to_string(n));
  }
  return {s.sum_4, bound};
}

ClosedProduct closed_product(int n, double alpha) {
  if (n < 2) throw ContractError("closed_product needs n >= 2");
  require_alpha(alpha);
  const double m = n - 1.0;
  const double factor = 1.0 + alpha * alpha * m / n - 2.0 * alpha * m / n;
  ClosedProduct out;
  out.log_product = -m * std::log(static_cast<double>(n)) + std::log(factor);
  out.product = std::exp(out.log_product);
  out.geometric_mean_stat = m * std::exp(out.log_product / m);
  if (out.geometric_mean_stat < 0.25) {
    throw NumericError("geometric-mean statistic below 1/4 at n=" + std::to_string(n));
  }
  return out;
}

RateConstants rate_constants(double alpha) {
  require_alpha(alpha);
  const double a = alpha, aa = std::fabs(a), a2 = a * a;
  const double b = 1.0 - a2, om = 1.0 - a;

  // sup_{n>=1} n a^{2n+2}, attained near n = -1/(2 ln|a|).
  double sup_term = 0.0;
  if (aa > 0.0) {
    const double nstar = -1.0 / (2.0 * std::log(aa));
    for (double c : {1.0, std::floor(nstar), std::ceil(nstar)}) {
      if (c >= 1.0) sup_term = std::max(sup_term, c * std::pow(aa, 2.0 * c + 2.0));
    }
  }

  RateConstants k{};
  k.C1 = (a2 + (1.0 + a) * (1.0 + a)) / (b * b) + (4.0 * aa + 5.0 * a2) / (om * om * b);
  k.C2 = 4.0 / (b * b * b) * sup_term + (4.0 * a2 + a2 * a2) / (b * b * b * b) + 8.0 / (om * om * b) +
         16.0 * aa / ((1.0 - aa) * om * om * b) + 16.0 / (om * om * om * om);
  k.C3 = std::pow(std::pow(2.0, 4.0 / 3.0) / (std::pow(b, 4.0 / 3.0) * (1.0 - std::pow(aa, 4.0 / 3.0))) +
                      16.0 / std::pow(om, 8.0 / 3.0),
                  3.0);
  k.C4 = b * b * b / (1.0 + a2) * std::sqrt(k.C2 * k.C2 + k.C3);
  const double v = (1.0 + a2) / (b * b * b) + k.C2 / 10.0;
  k.C5 = 81.0 * v * v;
  const double w = 2.0 * std::sqrt(2.0 / M_PI) + 1.0;
  k.C6 = (4.0 * std::pow(w, 4) * std::sqrt(b / (1.0 + a2)) + 2.0 * w * w * b / std::sqrt(1.0 + a2)) *
         std::pow(k.C5, 0.25) *
         std::sqrt(2.0 * (1.0 + a2) / b + b * b * k.C1 * k.C1 / 10.0 + b * b * k.C2 / 5.0);
  return k;
}

}  // namespace yule
