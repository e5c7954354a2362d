#pragma once

namespace smtpflow::util {

/// Inverse standard normal CDF for p in (0, 1).
double probit(double p);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace smtpflow::util
