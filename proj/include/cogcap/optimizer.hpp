#pragma once

#include <limits>
#include <vector>

#include "cogcap/fading.hpp"
#include "cogcap/sensing.hpp"
#include "cogcap/statemodel.hpp"

namespace cogcap::optimizer {

/// Full system description for one operating point.
struct SystemParams {
    int M = 1;            ///< sensed channels
    double T = 1.0;       ///< frame length [s]
    double N = 0.1;       ///< sensing time [s], 0 < N < T
    double Bc = 1.0;      ///< channel bandwidth [Hz]
    double theta = 0.1;   ///< QoS exponent [1/bits]
    double rho = 0.1;     ///< prior busy probability
    double sigma_n2 = 1.0;  ///< noise variance per symbol [W]
    double sigma_sp2 = 1.0; ///< primary-signal variance per symbol [W]
    double iavg = 0.1;    ///< average interference cap [W]
    fading::FadingModel model = fading::FadingModel::rayleigh();
    sensing::SensingPerformance perf;

    /// Optional hard ceiling on both transmit powers [W]. Infinity means no
    /// cap. Required to keep the problem well-posed when a power level drops
    /// out of the interference constraint (rho (1-P_d) = 0 or rho P_d = 0);
    /// the capped policy is supported by the frame simulator only, the
    /// quadrature route needs the cap inactive.
    double peak_power = std::numeric_limits<double>::infinity();

    void validate() const;
    statemodel::ModelInputs model_inputs() const;
    statemodel::RateContext rate_context() const;
};

/// Constants of the optimal power adaptation. With x = z / z_sp,
///   P1 = (mu1 / z) [ (x / (beta1 lambda))^(1/(c+1)) - 1 ]   for x >= beta1 lambda,
///   P2 = (mu2 / z) [ (x / (beta2 lambda))^(1/(c+1)) - 1 ]   for x >= beta2 lambda,
/// and zero below the cutoffs. lambda is the multiplier that makes the
/// average interference meet the cap with equality.
struct PowerPolicy {
    double c = 0.0;     ///< Bc (T - N) theta / ln 2, dimensionless
    double mu1 = 0.0;   ///< Bc (sigma_n2 + sigma_sp2) [W]
    double mu2 = 0.0;   ///< Bc sigma_n2 [W]
    double beta1 = 0.0; ///< mu1 rho P_d / (c alpha) [W]
    double beta2 = 0.0; ///< rho (1 - P_d) mu2 / (c (1-rho)(1-P_f)) [W]
    double lambda = std::numeric_limits<double>::quiet_NaN(); ///< [1/W]
    double peak_power = std::numeric_limits<double>::infinity();

    bool has_lambda() const { return lambda == lambda; }

    PowerPolicy with_lambda(double value) const {
        PowerPolicy p = *this;
        p.lambda = value;
        return p;
    }
};

/// Derives the policy constants (lambda left unset). Throws
/// std::domain_error when a transmit power is unconstrained by the
/// interference cap (beta1 or beta2 would be zero with the corresponding
/// state reachable) and no peak power cap was supplied.
PowerPolicy policy_constants(const SystemParams& p);

/// Optimal transmit powers for one gain realization [W]. Throws
/// std::domain_error for z > 0 with z_sp = 0 (uncapped policies only);
/// z = z_sp = 0 yields zero power.
double power_p1(double z, double z_sp, const PowerPolicy& pol);
double power_p2(double z, double z_sp, const PowerPolicy& pol);

/// Interference products P1 * z_sp and P2 * z_sp as functions of the ratio
/// x alone; these are the quadrature integrands of the average-interference
/// constraint. Uncapped policy required.
double busy_interference_product(const PowerPolicy& pol, double x);
double idle_interference_product(const PowerPolicy& pol, double x);

/// Left-hand side of the average-interference constraint at the policy's
/// lambda [W]: the scenario-1 term uses the max-of-M ratio law, the k-th
/// scenario-3 case the max-of-k law, each integrated adaptively.
double average_interference(const PowerPolicy& pol, const SystemParams& p);

/// Finds lambda such that average_interference equals p.iavg within 1e-6
/// relative, by bracket growth from lambda = 1 followed by bisection in
/// log-lambda. Throws cogcap::numerical_error if no bracket is found after
/// 200 doublings.
PowerPolicy solve_lambda(const SystemParams& p);

/// Per-state pieces of the effective-capacity log argument.
struct EffCapTerms {
    double busy_integral = 0.0;        ///< tail integral, max-of-M law
    double busy_mass = 0.0;            ///< F_M(beta1 lambda)
    std::vector<double> idle_integral; ///< k = 1..M tail integrals
    std::vector<double> idle_mass;     ///< F_k(beta2 lambda)
    double off_mass = 0.0;             ///< p_{M+2}
};

struct EffCapResult {
    double re = 0.0;     ///< effective capacity [bits/s/Hz], zero-power mass included
    double re_no_mass = 0.0; ///< variant without the below-cutoff mass terms
    double lambda = 0.0;
    double achieved_interference = 0.0; ///< [W]
    EffCapTerms terms;
};

/// Effective capacity of the optimal policy:
///   re = -ln( p1 (F_M(L1) + J_M) + sum_k p_{k+1} (F_k(L2) + J_k) + p_off )
///        / (theta T Bc)
/// where J_n integrates (x/L)^(-c/(c+1)) against the max-of-n ratio law
/// above the cutoff L. The F(L) terms carry the zero-power frames, whose
/// service MGF contribution is 1. The same argument is also assembled from
/// the collapsed single-integral form (binomial identity) and the two
/// routes are required to agree.
EffCapResult effective_capacity(const PowerPolicy& pol, const SystemParams& p);

/// Integrand identity behind the collapsed form, exposed for verification:
/// per-k sum  sum_k k C(M,k) alpha^(M-k) ((1-alpha) F)^(k-1)  versus the
/// closed form  M (alpha + (1-alpha) F)^(M-1).
double idle_weight_sum_direct(int M, double alpha, double F);
double idle_weight_sum_collapsed(int M, double alpha, double F);

struct OutageCap {
    double phi = 0.0; ///< [W]; negative signals an infeasible outage target
    bool feasible = true;
};

/// Converts a primary-user outage target into an average-interference cap:
///   phi = -ln(1 - P_out) P_pri / (2^R_min - 1) - sigma_np2 Bc.
/// R_min below 1e-9 is rejected (the cap diverges as R_min -> 0).
OutageCap outage_to_interference_cap(double r_min, double p_out, double p_pri,
                                     double sigma_np2, double bc);

/// Delay-violation bound c e^(-theta a d_max / 2), clamped to at most 1.
double delay_bound(double theta, double arrival_rate, double d_max, double c_const);

} // namespace cogcap::optimizer
