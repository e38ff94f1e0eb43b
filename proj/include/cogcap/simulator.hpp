#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cogcap/optimizer.hpp"
#include "cogcap/rng.hpp"

namespace cogcap::simulator {

enum class Scenario { S1 = 0, S2 = 1, S3 = 2, S4 = 3 };

/// One simulated frame. Scenario S3 is the OFF state (miss-detection:
/// transmission rate exceeds capacity, zero service); interference reaches
/// the primary only in S1 and S3.
struct FrameOutcome {
    Scenario scenario = Scenario::S1;
    int k_idle = 0;              ///< idle-detected channels, 0..M
    double selected_ratio = 0.0; ///< z / z_sp of the transmission channel
    double service_bits = 0.0;
    double interference_w = 0.0; ///< instantaneous P * z_sp at the primary
    int state_index = 1;         ///< 1..M+2 (M+2 = OFF)
};

/// Associatively mergeable per-frame sums. Sums are accumulated in chunk
/// order, so aggregates are bit-identical for a fixed (seed, n_frames)
/// regardless of worker count.
struct FrameAggregates {
    std::uint64_t n_frames = 0;
    double sum_exp_neg_theta_service = 0.0;
    double sumsq_exp_neg_theta_service = 0.0;
    double sum_service = 0.0;
    double sumsq_service = 0.0;
    double sum_interference = 0.0;
    double sumsq_interference = 0.0;
    std::array<std::uint64_t, 4> scenario_counts{};
    std::vector<std::uint64_t> state_counts; ///< M+2 entries
    std::uint64_t zero_power_on_frames = 0;  ///< ON frames whose ratio fell below the cutoff

    void merge(const FrameAggregates& other);

    double mean_exp_neg_theta_service() const;
    double mean_service() const;
    double mean_interference() const;
    /// Standard errors of the corresponding means.
    double se_exp_neg_theta_service() const;
    double se_interference() const;
};

/// Simulates a single frame: draw occupancy, per-channel detection, gain
/// pairs; pick the max-ratio channel among the eligible set; apply the
/// policy powers; account service and interference.
FrameOutcome simulate_frame(const optimizer::SystemParams& p, const optimizer::PowerPolicy& pol,
                            rng::Stream& stream);

/// Runs n_frames independent frames. Frames are partitioned into fixed-size
/// chunks with substreams derived from (seed, chunk index); n_workers only
/// controls threading, never the results.
FrameAggregates simulate_frames(const optimizer::SystemParams& p,
                                const optimizer::PowerPolicy& pol, std::uint64_t n_frames,
                                std::uint64_t seed, int n_workers = 0);

struct McEffectiveCapacity {
    double re_hat = 0.0;   ///< [bits/s/Hz]
    double std_err = 0.0;  ///< delta-method standard error of re_hat
};

/// Effective-capacity estimate from aggregates: frames are i.i.d., so the
/// per-frame MGF determines the service log-MGF exactly:
///   re_hat = -ln(mean e^(-theta * service)) / (theta T Bc).
/// Requires at least 1e4 frames.
McEffectiveCapacity estimate_effective_capacity_mc(const FrameAggregates& agg,
                                                   const optimizer::SystemParams& p);

/// Queue simulation artifacts. The backlog trace is decimated by
/// backlog_stride to bound memory; the tail histogram and the fitted decay
/// slope use every frame.
struct QueueTrace {
    std::vector<double> backlog;
    std::uint64_t backlog_stride = 1;
    std::vector<double> thresholds;          ///< [bits]
    std::vector<std::uint64_t> exceedances;  ///< frames with Q >= threshold
    std::uint64_t n_frames = 0;
    double slope = 0.0;          ///< fitted decay rate of ln P(Q >= q) [1/bits]
    double slope_std_err = 0.0;
    bool fit_valid = false;
    std::size_t fit_first = 0;   ///< fitted threshold index range [first, last]
    std::size_t fit_last = 0;
    bool instability_warning = false;
    double mean_service = 0.0;   ///< [bits/frame]
};

/// Lindley recursion Q <- max(Q + arrival - service, 0) over n_frames with
/// constant per-frame arrivals. The tail P(Q >= q) is recorded on a
/// log-spaced grid scaled by 1/theta and the decay slope is fitted by least
/// squares over thresholds with at least 100 exceedances.
QueueTrace simulate_queue(const optimizer::SystemParams& p, const optimizer::PowerPolicy& pol,
                          double arrival_bits_per_frame, std::uint64_t n_frames,
                          std::uint64_t seed);

} // namespace cogcap::simulator
