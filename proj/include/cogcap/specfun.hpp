#pragma once

namespace cogcap::specfun {

/// Regularized lower incomplete gamma function P(shape, limit)
/// = gamma(shape, limit) / Gamma(shape).
///
/// Absolute error stays below 1e-12 for shape up to 1e4. Uses the power
/// series for limit < shape + 1 and a Lentz continued fraction otherwise;
/// for large shapes the exponential prefactor is assembled from a Stirling
/// correction so the tails do not lose digits through lgamma cancellation.
///
/// Throws std::domain_error on shape <= 0, limit < 0 or non-finite input.
double reg_lower_gamma(double shape, double limit);

/// Complement Q(shape, limit) = 1 - P(shape, limit), computed directly so
/// that tiny upper tails keep full relative precision.
double reg_upper_gamma(double shape, double limit);

/// Standard normal upper-tail probability Q(x) = P(Z > x).
/// Underflows to 0 for large x without raising. Throws std::domain_error
/// on non-finite input.
double gaussian_q(double x);

} // namespace cogcap::specfun
