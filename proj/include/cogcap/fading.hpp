#pragma once

#include "cogcap/rng.hpp"

namespace cogcap::fading {

/// Pair of independent unit-mean power gains: z for the secondary link and
/// z_sp for the secondary-transmitter -> primary-receiver link.
struct GainPair {
    double z = 0.0;
    double z_sp = 0.0;
};

enum class Kind { Rayleigh, Nakagami };

/// Unit-mean fading law for the channel power gains. Rayleigh gains are
/// unit-mean exponential; Nakagami-m gains are unit-mean gamma with integer
/// shape m. Rayleigh is exactly the m = 1 member, and every operation routes
/// through the same m-parameterized formulas so the two are identical.
class FadingModel {
public:
    static FadingModel rayleigh() { return FadingModel(Kind::Rayleigh, 1); }
    static FadingModel nakagami(int m); // integer m in [1, 16]

    Kind kind() const { return kind_; }
    int m() const { return m_; }

    /// Density of the gain ratio x = z / z_sp of two independent same-law
    /// gains: Gamma(2m) x^(m-1) / ((x+1)^(2m) Gamma(m)^2).
    double ratio_pdf(double x) const;

    /// Distribution function of the gain ratio; closed form obtained by
    /// integrating ratio_pdf termwise (for m = 1 this is x/(x+1)).
    double ratio_cdf(double x) const;

    /// Density of the maximum ratio over n independent channels:
    /// n * f(x) * F(x)^(n-1).
    double max_ratio_pdf(int n, double x) const;

    /// Distribution function of the maximum ratio: F(x)^n.
    double max_ratio_cdf(int n, double x) const;

    /// One independent (z, z_sp) draw.
    GainPair sample_gain_pair(rng::Stream& stream) const;

    /// One unit-mean gain draw.
    double sample_gain(rng::Stream& stream) const;

private:
    FadingModel(Kind kind, int m) : kind_(kind), m_(m) {}

    Kind kind_;
    int m_;
};

} // namespace cogcap::fading
