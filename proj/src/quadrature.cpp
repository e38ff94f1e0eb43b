#include "cogcap/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "cogcap/errors.hpp"

namespace cogcap::quad {
namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule (QUADPACK constants). Nodes are symmetric; only x >= 0 stored.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights attach to the odd-indexed Kronrod nodes.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct RuleResult {
    double integral;
    double error;
};

RuleResult gauss_kronrod(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(mid - half * kKronrodNodes[static_cast<std::size_t>(i)]);
        fk[14 - i] = f(mid + half * kKronrodNodes[static_cast<std::size_t>(i)]);
    }
    fk[7] = f(mid);

    double kron = 0.0;
    for (int i = 0; i < 7; ++i)
        kron += kKronrodWeights[static_cast<std::size_t>(i)] * (fk[i] + fk[14 - i]);
    kron += kKronrodWeights[7] * fk[7];

    double gauss = 0.0;
    for (int i = 0; i < 3; ++i)
        gauss += kGaussWeights[static_cast<std::size_t>(i)] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    gauss += kGaussWeights[3] * fk[7];

    kron *= half;
    gauss *= half;
    if (!std::isfinite(kron))
        throw numerical_error("quadrature: integrand produced a non-finite value on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
    return {kron, std::abs(kron - gauss)};
}

double adapt(const Integrand& f, double a, double b, double tol, int depth) {
    const RuleResult r = gauss_kronrod(f, a, b);
    if (r.error <= tol || r.error <= 1e-300) return r.integral;
    if (depth <= 0)
        throw numerical_error(
            "quadrature: adaptive subdivision exhausted at depth limit on [" +
            std::to_string(a) + ", " + std::to_string(b) + "], residual error " +
            std::to_string(r.error));
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth - 1) + adapt(f, mid, b, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (!(a <= b)) throw numerical_error("quadrature: invalid interval");
    if (a == b) return 0.0;
    const RuleResult whole = gauss_kronrod(f, a, b);
    const double tol = opt.rel_tol * std::max(std::abs(whole.integral), 1e-300);
    if (whole.error <= tol) return whole.integral;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, opt.max_depth) +
           adapt(f, mid, b, 0.5 * tol, opt.max_depth);
}

double integrate_upper(const Integrand& f, double lower, const Options& opt) {
    auto mapped = [&f, lower](double t) {
        if (t >= 1.0) return 0.0;
        const double u = 1.0 - t;
        const double x = lower + t / u;
        return f(x) / (u * u);
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

} // namespace cogcap::quad
