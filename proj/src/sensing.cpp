#include "cogcap/sensing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cogcap/errors.hpp"
#include "cogcap/specfun.hpp"

namespace cogcap::sensing {

std::int64_t SensingParams::sample_count() const {
    return std::llround(N * B);
}

double SensingParams::rounding_delta() const {
    return static_cast<double>(sample_count()) - N * B;
}

void SensingParams::validate() const {
    if (!(std::isfinite(N) && std::isfinite(B) && std::isfinite(sigma_n2) &&
          std::isfinite(sigma_sp2) && std::isfinite(gamma)))
        throw std::domain_error("SensingParams: non-finite field");
    if (N <= 0.0) throw std::domain_error("SensingParams: N must be positive");
    if (B <= 0.0) throw std::domain_error("SensingParams: B must be positive");
    if (sigma_n2 <= 0.0) throw std::domain_error("SensingParams: sigma_n2 must be positive");
    if (sigma_sp2 < 0.0) throw std::domain_error("SensingParams: sigma_sp2 must be nonnegative");
    if (gamma < 0.0) throw std::domain_error("SensingParams: gamma must be nonnegative");
    if (N * B < 1.0)
        throw std::domain_error("SensingParams: N*B must be at least one complex symbol, got " +
                                std::to_string(N * B));
}

namespace {

double exact_tail(double samples, double gamma, double sigma2) {
    return specfun::reg_upper_gamma(samples, samples * gamma / sigma2);
}

double gaussian_tail(double samples, double gamma, double sigma2) {
    // statistic ~ Normal(sigma2, sigma2^2 / samples)
    return specfun::gaussian_q(std::sqrt(samples) * (gamma - sigma2) / sigma2);
}

} // namespace

DetectorCurves detector_performance(const SensingParams& p) {
    p.validate();
    const double samples = static_cast<double>(p.sample_count());
    DetectorCurves out;
    if (p.method == Method::ExactChiSquare) {
        out.pf = exact_tail(samples, p.gamma, p.sigma_n2);
        out.pd = exact_tail(samples, p.gamma, p.sigma_n2 + p.sigma_sp2);
    } else {
        out.pf = gaussian_tail(samples, p.gamma, p.sigma_n2);
        out.pd = gaussian_tail(samples, p.gamma, p.sigma_n2 + p.sigma_sp2);
    }
    return out;
}

double busy_detection_alpha(double rho, double pf, double pd) {
    for (double v : {rho, pf, pd})
        if (!(v >= 0.0 && v <= 1.0))
            throw std::range_error("busy_detection_alpha: arguments must lie in [0,1]");
    return rho * pd + (1.0 - rho) * pf;
}

SensingPerformance sense(const SensingParams& p, double rho) {
    const DetectorCurves c = detector_performance(p);
    return {c.pf, c.pd, busy_detection_alpha(rho, c.pf, c.pd)};
}

double threshold_for_target(const SensingParams& p, const Target& target) {
    if (!(target.value > 0.0 && target.value < 1.0))
        throw numerical_error("threshold_for_target: target " + std::to_string(target.value) +
                              " is attained only in the gamma limits; no bracket exists");

    auto eval = [&p, &target](double gamma) {
        SensingParams q = p;
        q.gamma = gamma;
        const DetectorCurves c = detector_performance(q);
        return (target.kind == TargetKind::FalseAlarm ? c.pf : c.pd) - target.value;
    };

    // Curves decrease from their gamma = 0 value towards 0.
    double lo = 0.0;
    double f_lo = eval(lo);
    if (f_lo < 0.0)
        throw numerical_error("threshold_for_target: target exceeds the detector value at "
                              "gamma = 0; no bracket exists");

    const double sigma2 =
        target.kind == TargetKind::FalseAlarm ? p.sigma_n2 : p.sigma_n2 + p.sigma_sp2;
    double hi = 2.0 * sigma2;
    double f_hi = eval(hi);
    int grow = 0;
    while (f_hi > 0.0) {
        if (++grow > 200)
            throw numerical_error("threshold_for_target: bracket growth exhausted");
        lo = hi;
        f_lo = eval(lo);
        hi *= 2.0;
        f_hi = eval(hi);
    }

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double f_mid = eval(mid);
        if (std::abs(f_mid) <= 1e-12) return mid;
        if (f_mid > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(hi, 1.0)) break;
    }
    if (std::abs(eval(mid)) > 1e-9)
        throw numerical_error("threshold_for_target: bisection did not reach tolerance");
    return mid;
}

} // namespace cogcap::sensing
