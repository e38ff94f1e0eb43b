#pragma once

#include <cstdint>

namespace cogcap::sensing {

enum class Method { ExactChiSquare, GaussianApprox };

/// Energy-detector configuration for one channel. The detector averages
/// the energy of round(N*B) complex symbols and compares it to gamma.
struct SensingParams {
    double N = 0.1;          ///< sensing duration [s]
    double B = 10000.0;      ///< channel bandwidth [Hz]
    double sigma_n2 = 1.0;   ///< noise variance per complex symbol [W]
    double sigma_sp2 = 1.0;  ///< primary-signal variance per complex symbol [W]
    double gamma = 1.0;      ///< detection threshold [W]
    Method method = Method::ExactChiSquare;

    /// N*B rounded to the nearest integer sample count.
    std::int64_t sample_count() const;
    /// Difference between the rounded sample count and the raw N*B product.
    double rounding_delta() const;

    void validate() const; // throws std::domain_error on violated invariants
};

struct SensingPerformance {
    double pf = 0.0;    ///< false-alarm probability
    double pd = 0.0;    ///< detection probability
    double alpha = 0.0; ///< busy-detection probability rho*pd + (1-rho)*pf
};

struct DetectorCurves {
    double pf = 0.0;
    double pd = 0.0;
};

/// False-alarm and detection probabilities of the energy detector.
///
/// ExactChiSquare uses the chi-square tail of the averaged energy statistic:
/// the statistic scaled by samples/variance is Gamma(samples, 1), so
///   pf = Q(samples, samples*gamma/sigma_n2),
///   pd = Q(samples, samples*gamma/(sigma_n2 + sigma_sp2)),
/// with Q the regularized upper gamma function. Argument order differs from
/// the usual P(x, a) notation with the limit first; here shape comes first.
/// GaussianApprox replaces the statistic by a normal with matching moments
/// (mean sigma2, variance sigma2^2/samples).
DetectorCurves detector_performance(const SensingParams& p);

/// Probability a channel is detected busy given prior busy probability rho.
double busy_detection_alpha(double rho, double pf, double pd);

/// Convenience: detector curves plus alpha for a given prior.
SensingPerformance sense(const SensingParams& p, double rho);

enum class TargetKind { FalseAlarm, Detection };

struct Target {
    TargetKind kind;
    double value; // must lie strictly inside (0, 1)
};

/// Inverts the detector curve: finds gamma such that pf (or pd) equals
/// target.value within 1e-9 absolute. The curves are strictly decreasing in
/// gamma, so the root is unique; solved by bracketed bisection. Throws
/// cogcap::numerical_error when no bracket exists (targets of exactly 0 or 1
/// are attained only at gamma -> inf or gamma = 0).
double threshold_for_target(const SensingParams& p, const Target& target);

} // namespace cogcap::sensing
