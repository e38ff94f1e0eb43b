#include "cogcap/fading.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cogcap::fading {
namespace {

void check_x(double x) {
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("fading: ratio argument must be nonnegative, got " +
                                std::to_string(x));
}

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

// Gamma(2m) / Gamma(m)^2, exact products for the small integer m in use.
double ratio_norm(int m) {
    // = C(2m-1, m) * m  (both ways of writing (2m-1)! / ((m-1)!^2 m!) * m!)
    return binomial(2 * m - 1, m) * static_cast<double>(m);
}

} // namespace

FadingModel FadingModel::nakagami(int m) {
    if (m < 1 || m > 16)
        throw std::domain_error("FadingModel: Nakagami m must be an integer in [1, 16], got " +
                                std::to_string(m));
    return FadingModel(Kind::Nakagami, m);
}

double FadingModel::ratio_pdf(double x) const {
    check_x(x);
    if (std::isinf(x)) return 0.0;
    const double u = x + 1.0;
    double p = ratio_norm(m_) / (u * u);
    // (x / (x+1)^2)^(m-1) keeps intermediates scaled for larger m.
    for (int i = 1; i < m_; ++i) p *= x / (u * u);
    return p;
}

double FadingModel::ratio_cdf(double x) const {
    check_x(x);
    if (std::isinf(x)) return 1.0;
    // Termwise integral of ratio_pdf with u = x+1:
    //   F(x) = N * sum_j C(m-1,j) (-1)^(m-1-j) (u^(j-2m+1) - 1) / (j-2m+1)
    const double u = x + 1.0;
    const double norm = ratio_norm(m_);
    double sum = 0.0;
    for (int j = 0; j <= m_ - 1; ++j) {
        const double power = static_cast<double>(j - 2 * m_ + 1);
        const double sign = ((m_ - 1 - j) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binomial(m_ - 1, j) * (std::pow(u, power) - 1.0) / power;
    }
    const double f = norm * sum;
    return std::min(1.0, std::max(0.0, f));
}

double FadingModel::max_ratio_pdf(int n, double x) const {
    if (n < 1) throw std::domain_error("max_ratio_pdf: n must be at least 1");
    check_x(x);
    if (n == 1) return ratio_pdf(x);
    return n * ratio_pdf(x) * std::pow(ratio_cdf(x), n - 1);
}

double FadingModel::max_ratio_cdf(int n, double x) const {
    if (n < 1) throw std::domain_error("max_ratio_cdf: n must be at least 1");
    check_x(x);
    if (n == 1) return ratio_cdf(x);
    return std::pow(ratio_cdf(x), n);
}

double FadingModel::sample_gain(rng::Stream& stream) const {
    return stream.unit_mean_erlang(m_);
}

GainPair FadingModel::sample_gain_pair(rng::Stream& stream) const {
    GainPair g;
    g.z = sample_gain(stream);
    g.z_sp = sample_gain(stream);
    return g;
}

} // namespace cogcap::fading
