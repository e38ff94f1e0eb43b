#include "cogcap/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cogcap/errors.hpp"
#include "cogcap/quadrature.hpp"

namespace cogcap::optimizer {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda(const PowerPolicy& pol) {
    if (!pol.has_lambda())
        throw std::domain_error("optimizer: PowerPolicy.lambda is unset; run solve_lambda "
                                "or supply a multiplier explicitly");
}

void require_uncapped(const PowerPolicy& pol, const char* op) {
    if (std::isfinite(pol.peak_power))
        throw std::domain_error(std::string(op) +
                                ": a finite peak-power cap breaks the ratio-only form of "
                                "P*z_sp; capped policies are supported by the simulator only");
}

// (x/L)^q - 1 for x > L, assembled in log space so extreme cutoffs cannot
// overflow the ratio.
double pow_ratio_minus_one(double x, double cutoff, double q) {
    return std::expm1(q * (std::log(x) - std::log(cutoff)));
}

double optimal_power(double z, double z_sp, double mu, double beta, const PowerPolicy& pol) {
    require_lambda(pol);
    if (z < 0.0 || z_sp < 0.0) throw std::domain_error("power: gains must be nonnegative");
    if (z == 0.0) return 0.0;
    if (z_sp == 0.0) {
        if (std::isfinite(pol.peak_power)) return pol.peak_power;
        throw std::domain_error("power: z_sp = 0 with z > 0 gives an unbounded ratio; "
                                "supply a peak-power cap");
    }
    const double x = z / z_sp;
    const double cutoff = beta * pol.lambda;
    if (std::isinf(cutoff)) return 0.0;
    double power;
    if (cutoff == 0.0) {
        power = kInf; // unconstrained by interference; only the cap can bind
    } else if (x <= cutoff) {
        return 0.0;
    } else {
        power = (mu / z) * pow_ratio_minus_one(x, cutoff, 1.0 / (pol.c + 1.0));
    }
    return std::min(power, pol.peak_power);
}

double interference_product(double mu, double beta, const PowerPolicy& pol, double x) {
    require_lambda(pol);
    if (std::isinf(x)) return 0.0;
    const double cutoff = beta * pol.lambda;
    if (std::isinf(cutoff) || !(x > cutoff)) return 0.0;
    return (mu / x) * pow_ratio_minus_one(x, cutoff, 1.0 / (pol.c + 1.0));
}

// Tail integral of (x/cutoff)^(-c/(c+1)) against the max-of-n ratio law.
double mgf_tail_integral(const fading::FadingModel& model, int n, double cutoff, double decay) {
    if (std::isinf(cutoff)) return 0.0;
    const double log_cut = std::log(cutoff);
    auto integrand = [&model, n, decay, log_cut](double x) {
        return std::exp(-decay * (std::log(x) - log_cut)) * model.max_ratio_pdf(n, x);
    };
    return quad::integrate_upper(integrand, cutoff);
}

} // namespace

void SystemParams::validate() const {
    if (M < 1) throw std::domain_error("SystemParams: M must be at least 1");
    if (!(T > 0.0) || !(N > 0.0) || !(N < T))
        throw std::domain_error("SystemParams: need 0 < N < T");
    if (!(Bc > 0.0)) throw std::domain_error("SystemParams: Bc must be positive");
    if (!(theta > 0.0)) throw std::domain_error("SystemParams: theta must be positive");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("SystemParams: rho must lie in [0,1]");
    if (!(sigma_n2 > 0.0)) throw std::domain_error("SystemParams: sigma_n2 must be positive");
    if (sigma_sp2 < 0.0) throw std::domain_error("SystemParams: sigma_sp2 must be nonnegative");
    if (!(iavg > 0.0)) throw std::domain_error("SystemParams: iavg must be positive");
    for (double v : {perf.pf, perf.pd, perf.alpha})
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("SystemParams: sensing probabilities must lie in [0,1]");
    if (std::abs(perf.alpha - (rho * perf.pd + (1.0 - rho) * perf.pf)) > 1e-12)
        throw std::domain_error("SystemParams: perf.alpha is inconsistent with rho, pd, pf");
    if (rho * (1.0 - perf.pd) == 0.0 && !std::isfinite(peak_power))
        throw std::domain_error("SystemParams: rho (1 - P_d) = 0 leaves P2 unconstrained; "
                                "supply a peak-power cap");
}

statemodel::ModelInputs SystemParams::model_inputs() const {
    return {M, rho, perf};
}

statemodel::RateContext SystemParams::rate_context() const {
    return {Bc, sigma_n2, sigma_sp2};
}

PowerPolicy policy_constants(const SystemParams& p) {
    p.validate();

    PowerPolicy pol;
    pol.c = p.Bc * (p.T - p.N) * p.theta / std::numbers::ln2_v<double>;
    pol.mu1 = p.Bc * (p.sigma_n2 + p.sigma_sp2);
    pol.mu2 = p.Bc * p.sigma_n2;
    pol.peak_power = p.peak_power;

    const double alpha = p.perf.alpha;
    const bool capped = std::isfinite(p.peak_power);

    const double busy_num = p.rho * p.perf.pd;
    if (busy_num > 0.0) {
        pol.beta1 = pol.mu1 * busy_num / (pol.c * alpha);
    } else if (alpha == 0.0) {
        pol.beta1 = kInf; // all-busy state unreachable, P1 never transmits
    } else if (capped) {
        pol.beta1 = 0.0;
    } else {
        throw std::domain_error("policy_constants: rho P_d = 0 with reachable busy state "
                                "leaves P1 unconstrained; supply a peak-power cap");
    }

    const double idle_num = p.rho * (1.0 - p.perf.pd);
    const double idle_den = (1.0 - p.rho) * (1.0 - p.perf.pf);
    if (idle_num == 0.0) {
        if (!capped)
            throw std::domain_error("policy_constants: rho (1 - P_d) = 0 makes beta2 zero "
                                    "and P2 unconstrained; supply a peak-power cap");
        pol.beta2 = 0.0;
    } else if (idle_den == 0.0) {
        pol.beta2 = kInf; // every idle detection is a miss; transmitting is pure loss
    } else {
        pol.beta2 = idle_num * pol.mu2 / (pol.c * idle_den);
    }
    return pol;
}

double power_p1(double z, double z_sp, const PowerPolicy& pol) {
    return optimal_power(z, z_sp, pol.mu1, pol.beta1, pol);
}

double power_p2(double z, double z_sp, const PowerPolicy& pol) {
    return optimal_power(z, z_sp, pol.mu2, pol.beta2, pol);
}

double busy_interference_product(const PowerPolicy& pol, double x) {
    return interference_product(pol.mu1, pol.beta1, pol, x);
}

double idle_interference_product(const PowerPolicy& pol, double x) {
    return interference_product(pol.mu2, pol.beta2, pol, x);
}

double average_interference(const PowerPolicy& pol, const SystemParams& p) {
    p.validate();
    require_lambda(pol);
    require_uncapped(pol, "average_interference");

    const double alpha = p.perf.alpha;
    const double miss = p.rho * (1.0 - p.perf.pd);
    double total = 0.0;

    const double w_busy = std::pow(alpha, p.M - 1) * p.rho * p.perf.pd;
    if (w_busy > 0.0 && !std::isinf(pol.beta1 * pol.lambda)) {
        auto f = [&](double x) {
            return busy_interference_product(pol, x) * p.model.max_ratio_pdf(p.M, x);
        };
        total += w_busy * quad::integrate_upper(f, pol.beta1 * pol.lambda);
    }

    if (miss > 0.0 && !std::isinf(pol.beta2 * pol.lambda)) {
        for (int k = 1; k <= p.M; ++k) {
            const double w = statemodel::idle_case_weight(p.M, k, alpha) * miss;
            if (w == 0.0) continue;
            auto f = [&, k](double x) {
                return idle_interference_product(pol, x) * p.model.max_ratio_pdf(k, x);
            };
            total += w * quad::integrate_upper(f, pol.beta2 * pol.lambda);
        }
    }
    return total;
}

PowerPolicy solve_lambda(const SystemParams& p) {
    PowerPolicy pol = policy_constants(p);
    require_uncapped(pol, "solve_lambda");

    auto lhs = [&](double lambda) { return average_interference(pol.with_lambda(lambda), p); };

    // Interference decreases in lambda. Grow a straddling bracket from 1.
    double lo = 1.0, hi = 1.0;
    double at_one = lhs(1.0);
    if (at_one == p.iavg) return pol.with_lambda(1.0);
    if (at_one > p.iavg) {
        hi = 2.0;
        int steps = 0;
        while (lhs(hi) > p.iavg) {
            lo = hi;
            hi *= 2.0;
            if (++steps > 200)
                throw numerical_error("solve_lambda: no bracket after 200 doublings upward; "
                                      "I(" + std::to_string(hi) + ") still exceeds the cap");
        }
    } else {
        lo = 0.5;
        int steps = 0;
        while (lhs(lo) < p.iavg) {
            hi = lo;
            lo *= 0.5;
            if (++steps > 200)
                throw numerical_error(
                    "solve_lambda: no bracket after 200 doublings downward; the "
                    "interference budget " + std::to_string(p.iavg) +
                    " W appears unreachable for these parameters");
        }
    }

    // Bisection on log lambda until the constraint holds to 1e-6 relative.
    for (int it = 0; it < 200; ++it) {
        const double mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
        const double value = lhs(mid);
        if (std::abs(value - p.iavg) <= 1e-6 * p.iavg) return pol.with_lambda(mid);
        if (value > p.iavg)
            lo = mid;
        else
            hi = mid;
    }
    throw numerical_error("solve_lambda: bisection did not reach 1e-6 relative residual "
                          "within 200 iterations");
}

double idle_weight_sum_direct(int M, double alpha, double F) {
    double sum = 0.0;
    for (int k = 1; k <= M; ++k) {
        const double w = statemodel::idle_case_weight(M, k, alpha);
        sum += static_cast<double>(k) * w * std::pow(F, k - 1);
    }
    return sum;
}

double idle_weight_sum_collapsed(int M, double alpha, double F) {
    return M * std::pow(alpha + (1.0 - alpha) * F, M - 1);
}

EffCapResult effective_capacity(const PowerPolicy& pol, const SystemParams& p) {
    p.validate();
    require_lambda(pol);
    require_uncapped(pol, "effective_capacity");

    const statemodel::TransitionModel tm = statemodel::transition_probabilities(p.model_inputs());
    const double alpha = p.perf.alpha;
    const double decay = pol.c / (pol.c + 1.0);
    const double cut1 = pol.beta1 * pol.lambda;
    const double cut2 = pol.beta2 * pol.lambda;

    EffCapTerms terms;
    terms.off_mass = tm.off();
    terms.busy_mass = std::isinf(cut1) ? 1.0 : p.model.max_ratio_cdf(p.M, cut1);
    terms.busy_integral = tm.on_busy() > 0.0 ? mgf_tail_integral(p.model, p.M, cut1, decay) : 0.0;

    double arg = tm.on_busy() * (terms.busy_mass + terms.busy_integral) + terms.off_mass;
    double mass_total = tm.on_busy() * terms.busy_mass;

    terms.idle_integral.resize(static_cast<std::size_t>(p.M), 0.0);
    terms.idle_mass.resize(static_cast<std::size_t>(p.M), 0.0);
    for (int k = 1; k <= p.M; ++k) {
        const double pk = tm.on_idle(k);
        const double mass = std::isinf(cut2) ? 1.0 : p.model.max_ratio_cdf(k, cut2);
        const double integral = pk > 0.0 ? mgf_tail_integral(p.model, k, cut2, decay) : 0.0;
        terms.idle_mass[static_cast<std::size_t>(k - 1)] = mass;
        terms.idle_integral[static_cast<std::size_t>(k - 1)] = integral;
        arg += pk * (mass + integral);
        mass_total += pk * mass;
    }

    // Collapsed single-integral route (binomial identity applied to the
    // k-sum); must agree with the per-k assembly.
    double collapsed = tm.on_busy() * (terms.busy_mass + terms.busy_integral) + terms.off_mass;
    const double idle_scale = (1.0 - p.rho) * (1.0 - p.perf.pf);
    if (idle_scale > 0.0 && !std::isinf(cut2)) {
        const double log_cut = std::log(cut2);
        auto integrand = [&](double x) {
            const double F = p.model.ratio_cdf(x);
            return p.model.ratio_pdf(x) * idle_weight_sum_collapsed(p.M, alpha, F) *
                   std::exp(-decay * (std::log(x) - log_cut));
        };
        collapsed += idle_scale * quad::integrate_upper(integrand, cut2);

        const double F0 = p.model.ratio_cdf(cut2);
        double mass_sum;
        if (alpha == 1.0) {
            mass_sum = static_cast<double>(p.M) * F0;
        } else {
            mass_sum = (std::pow(alpha + (1.0 - alpha) * F0, p.M) - std::pow(alpha, p.M)) /
                       (1.0 - alpha);
        }
        collapsed += idle_scale * mass_sum;
    } else {
        for (int k = 1; k <= p.M; ++k)
            collapsed += tm.on_idle(k) * terms.idle_mass[static_cast<std::size_t>(k - 1)];
    }

    if (std::abs(arg - collapsed) > 1e-8 * std::max(std::abs(arg), 1e-300) + 1e-14)
        throw numerical_error("effective_capacity: per-k and collapsed forms disagree (" +
                              std::to_string(arg) + " vs " + std::to_string(collapsed) + ")");
    if (!(arg > 0.0) || arg > 1.0 + 1e-12)
        throw numerical_error("effective_capacity: log argument " + std::to_string(arg) +
                              " escaped (0, 1]");

    EffCapResult out;
    out.terms = std::move(terms);
    out.lambda = pol.lambda;
    const double norm = p.theta * p.T * p.Bc;
    out.re = std::max(0.0, -std::log(std::min(arg, 1.0)) / norm);
    const double arg_no_mass = arg - mass_total;
    out.re_no_mass = arg_no_mass > 0.0 ? -std::log(arg_no_mass) / norm : kInf;
    out.achieved_interference = average_interference(pol, p);
    return out;
}

OutageCap outage_to_interference_cap(double r_min, double p_out, double p_pri,
                                     double sigma_np2, double bc) {
    if (!(p_out > 0.0 && p_out < 1.0))
        throw std::range_error("outage_to_interference_cap: P_out must lie in (0,1)");
    if (!(p_pri > 0.0) || !(bc > 0.0) || sigma_np2 < 0.0)
        throw std::range_error("outage_to_interference_cap: powers must be positive");
    if (!(r_min >= 1e-9))
        throw std::range_error("outage_to_interference_cap: R_min below the 1e-9 floor; "
                               "the cap diverges as R_min -> 0");
    const double denom = std::expm1(r_min * std::numbers::ln2_v<double>);
    OutageCap cap;
    cap.phi = -std::log1p(-p_out) * p_pri / denom - sigma_np2 * bc;
    cap.feasible = cap.phi >= 0.0;
    return cap;
}

double delay_bound(double theta, double arrival_rate, double d_max, double c_const) {
    if (!(theta > 0.0) || !(arrival_rate > 0.0) || !(c_const > 0.0) || d_max < 0.0)
        throw std::range_error("delay_bound: arguments must be positive (d_max nonnegative)");
    return std::min(1.0, c_const * std::exp(-0.5 * theta * arrival_rate * d_max));
}

} // namespace cogcap::optimizer
