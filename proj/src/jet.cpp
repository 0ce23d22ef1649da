#include "yule/jet.hpp"

#include <cmath>
#include <string>

#include "yule/errors.hpp"

namespace yule {

namespace {

void require_same_order(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) {
    throw ContractError("jet order mismatch: " + std::to_string(a.order()) + " vs " +
                        std::to_string(b.order()));
  }
}

}  // namespace

Jet::Jet(int order) {
  if (order < 0) throw ContractError("jet order must be nonnegative");
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet::Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw ContractError("jet needs at least one coefficient");
  check();
}

Jet Jet::constant(int order, double value) {
  Jet j(order);
  j.c_[0] = value;
  j.check();
  return j;
}

Jet Jet::variable(int order, double base) {
  Jet j(order);
  j.c_[0] = base;
  if (order >= 1) j.c_[1] = 1.0;
  j.check();
  return j;
}

void Jet::check() const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!std::isfinite(c_[k])) {
      throw NumericError("non-finite jet coefficient at order " + std::to_string(k));
    }
  }
}

Jet Jet::operator-() const {
  Jet r(*this);
  for (double& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& b) {
  require_same_order(*this, b);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
  check();
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  require_same_order(*this, b);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
  check();
  return *this;
}

Jet& Jet::operator*=(const Jet& b) { return *this = jet_mul(*this, b); }
Jet& Jet::operator/=(const Jet& b) { return *this = jet_div(*this, b); }

Jet& Jet::operator+=(double b) {
  c_[0] += b;
  check();
  return *this;
}

Jet& Jet::operator-=(double b) {
  c_[0] -= b;
  check();
  return *this;
}

Jet& Jet::operator*=(double b) {
  for (double& v : c_) v *= b;
  check();
  return *this;
}

Jet& Jet::operator/=(double b) {
  if (b == 0.0) throw DomainError("jet divided by zero scalar");
  for (double& v : c_) v /= b;
  check();
  return *this;
}

Jet jet_add(const Jet& a, const Jet& b) { return a + b; }

Jet jet_mul(const Jet& a, const Jet& b) {
  require_same_order(a, b);
  const int K = a.order();
  Jet r(K);
  for (int k = 0; k <= K; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
    r.c_[k] = s;
  }
  r.check();
  return r;
}

Jet jet_div(const Jet& a, const Jet& b) {
  require_same_order(a, b);
  if (b.c_[0] == 0.0) throw DomainError("jet division by a jet with zero constant term");
  const int K = a.order();
  Jet q(K);
  for (int k = 0; k <= K; ++k) {
    double s = a.c_[k];
    for (int i = 1; i <= k; ++i) s -= b.c_[i] * q.c_[k - i];
    q.c_[k] = s / b.c_[0];
  }
  q.check();
  return q;
}

Jet jet_sqrt(const Jet& a) {
  if (!(a.c_[0] > 0.0)) throw DomainError("jet sqrt needs a positive constant term");
  const int K = a.order();
  Jet s(K);
  s.c_[0] = std::sqrt(a.c_[0]);
  for (int k = 1; k <= K; ++k) {
    double t = a.c_[k];
    for (int i = 1; i < k; ++i) t -= s.c_[i] * s.c_[k - i];
    s.c_[k] = t / (2.0 * s.c_[0]);
  }
  s.check();
  return s;
}

Jet jet_powi(const Jet& a, int p) {
  if (p < 0) {
    if (a.value() == 0.0) throw DomainError("negative jet power of a zero constant term");
    return 1.0 / jet_powi(a, -p);
  }
  Jet result = Jet::constant(a.order(), 1.0);
  Jet base = a;
  unsigned e = static_cast<unsigned>(p);
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

double extract_derivative(const Jet& a, int m) {
  if (m < 0 || m > a.order()) {
    throw ContractError("derivative order " + std::to_string(m) + " outside jet order " +
                        std::to_string(a.order()));
  }
  return std::tgamma(m + 1.0) * a[m];
}

Jet exp(const Jet& a) {
  const int K = a.order();
  Jet e(K);
  e.c_[0] = std::exp(a.c_[0]);
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.c_[j] * e.c_[k - j];
    e.c_[k] = s / k;
  }
  e.check();
  return e;
}

Jet log(const Jet& a) {
  if (!(a.c_[0] > 0.0)) throw DomainError("jet log needs a positive constant term");
  const int K = a.order();
  Jet l(K);
  l.c_[0] = std::log(a.c_[0]);
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += j * l.c_[j] * a.c_[k - j];
    l.c_[k] = (a.c_[k] - s / k) / a.c_[0];
  }
  l.check();
  return l;
}

}  // namespace yule
