#pragma once

namespace yule {

/// Standard normal CDF via erfc.
double normal_cdf(double x);
/// Upper tail 1 - Phi(x) via erfc (accurate for large x).
double normal_tail(double x);
/// Inverse standard normal CDF on (0, 1) (Wichura's AS 241, about 1e-16 relative).
double normal_quantile(double p);

}  // namespace yule
