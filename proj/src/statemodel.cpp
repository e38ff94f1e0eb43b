#include "cogcap/statemodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cogcap::statemodel {
namespace {

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::domain_error(std::string("statemodel: ") + name + " must lie in [0,1]");
}

// log C(M, k); binomial terms are combined in log space so large M cannot
// overflow the intermediate coefficient.
double log_binomial(int M, int k) {
    return std::lgamma(M + 1.0) - std::lgamma(k + 1.0) - std::lgamma(M - k + 1.0);
}

} // namespace

double idle_case_weight(int M, int k, double alpha) {
    const double one_minus = 1.0 - alpha;
    if (alpha == 0.0 && k < M) return 0.0;
    if (one_minus == 0.0 && k > 1) return 0.0;
    double log_term = log_binomial(M, k);
    if (M - k > 0) log_term += (M - k) * std::log(alpha);
    if (k - 1 > 0) log_term += (k - 1) * std::log(one_minus);
    return std::exp(log_term);
}

void ModelInputs::validate() const {
    if (M < 1) throw std::domain_error("ModelInputs: M must be at least 1");
    check_prob(rho, "rho");
    check_prob(perf.pf, "pf");
    check_prob(perf.pd, "pd");
    check_prob(perf.alpha, "alpha");
}

double geometric_sum(double alpha, int M) {
    double sum = 0.0;
    double term = 1.0;
    for (int j = 0; j < M; ++j) {
        sum += term;
        term *= alpha;
    }
    return sum;
}

TransitionModel transition_probabilities(const ModelInputs& in) {
    in.validate();
    const int M = in.M;
    const double alpha = in.perf.alpha;
    const double idle_truly_idle = (1.0 - in.rho) * (1.0 - in.perf.pf);
    const double idle_truly_busy = in.rho * (1.0 - in.perf.pd);

    TransitionModel model;
    model.p.resize(static_cast<std::size_t>(M) + 2);
    model.p[0] = std::pow(alpha, M);
    for (int k = 1; k <= M; ++k)
        model.p[static_cast<std::size_t>(k)] = idle_case_weight(M, k, alpha) * idle_truly_idle;
    model.p.back() = idle_truly_busy * geometric_sum(alpha, M);
    return model;
}

ScenarioProbs scenario_probabilities(const ModelInputs& in) {
    in.validate();
    const double alpha = in.perf.alpha;
    const double alpha_pow = std::pow(alpha, in.M - 1);
    const double geom = geometric_sum(alpha, in.M);

    ScenarioProbs s;
    s.ps1 = alpha_pow * in.rho * in.perf.pd;
    s.ps2 = alpha_pow * (1.0 - in.rho) * in.perf.pf;
    s.ps3 = in.rho * (1.0 - in.perf.pd) * geom;
    s.ps4 = (1.0 - in.rho) * (1.0 - in.perf.pf) * geom;
    return s;
}

InterferenceProb interference_probability(const ModelInputs& in) {
    const ScenarioProbs s = scenario_probabilities(in);
    InterferenceProb out;
    out.p_int = s.ps1 + s.ps3;
    const double miss = in.rho * (1.0 - in.perf.pd);
    out.p_int_limit = miss == 0.0 ? 0.0 : miss / (1.0 - in.perf.alpha);
    return out;
}

void RateContext::validate() const {
    if (!(Bc > 0.0) || !(sigma_n2 > 0.0))
        throw std::domain_error("RateContext: Bc and sigma_n2 must be positive");
    if (sigma_sp2 < 0.0) throw std::domain_error("RateContext: sigma_sp2 must be nonnegative");
}

LinkRates link_rates(const RateContext& ctx, double p1, double p2, double z) {
    ctx.validate();
    if (p1 < 0.0 || p2 < 0.0 || z < 0.0)
        throw std::domain_error("link_rates: powers and gain must be nonnegative");

    const double noisy = ctx.Bc * (ctx.sigma_n2 + ctx.sigma_sp2);
    const double clean = ctx.Bc * ctx.sigma_n2;

    LinkRates r;
    r.c1 = ctx.Bc * std::log2(1.0 + p1 * z / noisy);
    r.c2 = ctx.Bc * std::log2(1.0 + p1 * z / clean);
    r.c3 = ctx.Bc * std::log2(1.0 + p2 * z / noisy);
    r.c4 = ctx.Bc * std::log2(1.0 + p2 * z / clean);
    r.r1 = r.c1;
    r.r2 = r.c4;
    return r;
}

} // namespace cogcap::statemodel
