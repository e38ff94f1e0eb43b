#pragma once

#include <vector>

#include "cogcap/sensing.hpp"

namespace cogcap::statemodel {

/// Inputs of the (M+2)-state frame model: M sensed channels, a common prior
/// busy probability and the detector operating point.
struct ModelInputs {
    int M = 1;
    double rho = 0.1;
    sensing::SensingPerformance perf;

    void validate() const;
};

/// Frame-state distribution. Because primary occupancy and fading are
/// independent across frames, every row of the transition matrix equals
/// this vector (the chain is rank-1), so the stationary law and each row
/// coincide. Layout: p[0] is the all-busy ON state, p[1..M] are the k-idle
/// ON states (k = 1..M), p[M+1] is the OFF state.
struct TransitionModel {
    std::vector<double> p;

    double on_busy() const { return p.front(); }
    double on_idle(int k) const { return p[static_cast<std::size_t>(k)]; }
    double off() const { return p.back(); }
};

struct ScenarioProbs {
    double ps1 = 0.0; ///< all busy-detected, transmission channel truly busy
    double ps2 = 0.0; ///< all busy-detected, transmission channel truly idle
    double ps3 = 0.0; ///< >=1 idle-detected, transmission channel truly busy
    double ps4 = 0.0; ///< >=1 idle-detected, transmission channel truly idle
};

struct InterferenceProb {
    double p_int = 0.0;       ///< probability the selected channel is truly busy
    double p_int_limit = 0.0; ///< M -> infinity limit rho (1 - P_d) / (1 - alpha)
};

/// Sum_{j=0}^{M-1} alpha^j; equals (1 - alpha^M)/(1 - alpha) with the
/// alpha -> 1 limit M built in.
double geometric_sum(double alpha, int M);

/// C(M, k) alpha^(M-k) (1-alpha)^(k-1): probability weight of "k of M
/// channels detected idle" relative to one idle-detected channel's
/// conditional law. Shared by the transition model, the interference
/// constraint and the effective-capacity sums.
double idle_case_weight(int M, int k, double alpha);

TransitionModel transition_probabilities(const ModelInputs& in);

ScenarioProbs scenario_probabilities(const ModelInputs& in);

/// p_int = ps1 + ps3 (computed as exactly that sum) plus its large-M limit.
InterferenceProb interference_probability(const ModelInputs& in);

/// Physical constants entering the per-frame SNRs.
struct RateContext {
    double Bc = 1.0;        ///< channel (coherence) bandwidth [Hz]
    double sigma_n2 = 1.0;  ///< noise variance per symbol [W]
    double sigma_sp2 = 1.0; ///< primary-signal variance per symbol [W]

    void validate() const;
};

/// Instantaneous rates and capacities of one frame [bits/s]. r1 is used when
/// every channel is detected busy, r2 when an idle-detected channel is used;
/// c1..c4 are the four scenario capacities. In scenario 3 the rate r2
/// exceeds c3 (the transmitter assumed no primary interference), which is
/// what makes that scenario an OFF state.
struct LinkRates {
    double r1 = 0.0;
    double r2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
};

LinkRates link_rates(const RateContext& ctx, double p1, double p2, double z);

} // namespace cogcap::statemodel
