#pragma once

#include <functional>

namespace cogcap::quad {

using Integrand = std::function<double(double)>;

struct Options {
    double rel_tol = 1e-9;
    int max_depth = 60;
};

/// Adaptive Gauss-Kronrod 15(7) integration of f over the finite
/// interval [a, b]. Throws cogcap::numerical_error when the subdivision
/// depth is exhausted or the integrand produces non-finite values.
double integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integral of f over [lower, +inf). The tail is mapped onto [0, 1) through
/// x = lower + t/(1-t) and integrated adaptively.
double integrate_upper(const Integrand& f, double lower, const Options& opt = {});

} // namespace cogcap::quad
