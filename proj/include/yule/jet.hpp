#pragma once

#include <vector>

namespace yule {

/// Truncated Taylor polynomial c_0 + c_1 e + ... + c_K e^K in one variable.
///
/// Jets have value semantics. Every operation checks its output and throws
/// NumericError on a non-finite coefficient.
class Jet {
 public:
  static constexpr int kDefaultOrder = 10;

  /// Zero jet of the given order.
  explicit Jet(int order = kDefaultOrder);
  /// Jet with explicit coefficients; order is coeffs.size() - 1.
  explicit Jet(std::vector<double> coeffs);

  static Jet constant(int order, double value);
  /// The expansion variable: base + e.
  static Jet variable(int order, double base);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double value() const { return c_[0]; }
  const std::vector<double>& coeffs() const { return c_; }

  Jet operator-() const;
  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);
  Jet& operator+=(double b);
  Jet& operator-=(double b);
  Jet& operator*=(double b);
  Jet& operator/=(double b);

 private:
  friend Jet jet_mul(const Jet&, const Jet&);
  friend Jet jet_div(const Jet&, const Jet&);
  friend Jet jet_sqrt(const Jet&);
  friend Jet exp(const Jet&);
  friend Jet log(const Jet&);
  void check() const;
  std::vector<double> c_;
};

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_mul(const Jet& a, const Jet& b);
/// Throws DomainError if b has zero constant term.
Jet jet_div(const Jet& a, const Jet& b);
/// Throws DomainError unless a has a positive constant term.
Jet jet_sqrt(const Jet& a);
/// Integer power by repeated squaring; negative p requires a nonzero constant term.
Jet jet_powi(const Jet& a, int p);
/// m! * a[m].
double extract_derivative(const Jet& a, int m);

Jet exp(const Jet& a);
/// Requires a positive constant term.
Jet log(const Jet& a);
inline Jet sqrt(const Jet& a) { return jet_sqrt(a); }

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return jet_div(a, b); }
inline Jet operator+(Jet a, double b) { return a += b; }
inline Jet operator-(Jet a, double b) { return a -= b; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator/(Jet a, double b) { return a /= b; }
inline Jet operator+(double a, Jet b) { return b += a; }
inline Jet operator-(double a, const Jet& b) { return (-b) += a; }
inline Jet operator*(double a, Jet b) { return b *= a; }
inline Jet operator/(double a, const Jet& b) { return Jet::constant(b.order(), a) / b; }

/// Constant term, for code generic over double and Jet.
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

/// A constant carrying the shape (order) of `like`.
inline double constant_like(double, double v) { return v; }
inline Jet constant_like(const Jet& like, double v) { return Jet::constant(like.order(), v); }

}  // namespace yule
