#include "cogcap/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace cogcap::simulator {
namespace {

constexpr std::uint64_t kChunkFrames = 1u << 16;

struct Candidate {
    double ratio = -1.0;
    double z = 0.0;
    double z_sp = 0.0;
    bool truly_busy = false;
};

} // namespace

void FrameAggregates::merge(const FrameAggregates& other) {
    n_frames += other.n_frames;
    sum_exp_neg_theta_service += other.sum_exp_neg_theta_service;
    sumsq_exp_neg_theta_service += other.sumsq_exp_neg_theta_service;
    sum_service += other.sum_service;
    sumsq_service += other.sumsq_service;
    sum_interference += other.sum_interference;
    sumsq_interference += other.sumsq_interference;
    for (std::size_t i = 0; i < 4; ++i) scenario_counts[i] += other.scenario_counts[i];
    if (state_counts.size() < other.state_counts.size())
        state_counts.resize(other.state_counts.size(), 0);
    for (std::size_t i = 0; i < other.state_counts.size(); ++i)
        state_counts[i] += other.state_counts[i];
    zero_power_on_frames += other.zero_power_on_frames;
}

double FrameAggregates::mean_exp_neg_theta_service() const {
    return sum_exp_neg_theta_service / static_cast<double>(n_frames);
}

double FrameAggregates::mean_service() const {
    return sum_service / static_cast<double>(n_frames);
}

double FrameAggregates::mean_interference() const {
    return sum_interference / static_cast<double>(n_frames);
}

namespace {

double se_of_mean(double sum, double sumsq, std::uint64_t n) {
    if (n < 2) return std::numeric_limits<double>::infinity();
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sumsq - nn * mean * mean) / (nn - 1.0));
    return std::sqrt(var / nn);
}

} // namespace

double FrameAggregates::se_exp_neg_theta_service() const {
    return se_of_mean(sum_exp_neg_theta_service, sumsq_exp_neg_theta_service, n_frames);
}

double FrameAggregates::se_interference() const {
    return se_of_mean(sum_interference, sumsq_interference, n_frames);
}

FrameOutcome simulate_frame(const optimizer::SystemParams& p, const optimizer::PowerPolicy& pol,
                            rng::Stream& stream) {
    const int M = p.M;
    Candidate best_all;  // used when every channel is detected busy
    Candidate best_idle; // best among idle-detected channels
    int k_idle = 0;

    for (int ch = 0; ch < M; ++ch) {
        const bool busy = stream.bernoulli(p.rho);
        const bool detected_busy = stream.bernoulli(busy ? p.perf.pd : p.perf.pf);
        const fading::GainPair g = p.model.sample_gain_pair(stream);
        const double ratio = g.z / g.z_sp;
        if (ratio > best_all.ratio) best_all = {ratio, g.z, g.z_sp, busy};
        if (!detected_busy) {
            ++k_idle;
            if (ratio > best_idle.ratio) best_idle = {ratio, g.z, g.z_sp, busy};
        }
    }

    const double data_time = p.T - p.N;
    FrameOutcome out;
    out.k_idle = k_idle;

    if (k_idle == 0) {
        const Candidate& sel = best_all;
        out.selected_ratio = sel.ratio;
        const double p1 = optimizer::power_p1(sel.z, sel.z_sp, pol);
        const double snr = p1 * sel.z / (p.Bc * (p.sigma_n2 + p.sigma_sp2));
        out.service_bits = data_time * p.Bc * std::log2(1.0 + snr);
        out.scenario = sel.truly_busy ? Scenario::S1 : Scenario::S2;
        out.state_index = 1;
        out.interference_w = sel.truly_busy ? p1 * sel.z_sp : 0.0;
        return out;
    }

    const Candidate& sel = best_idle;
    out.selected_ratio = sel.ratio;
    const double p2 = optimizer::power_p2(sel.z, sel.z_sp, pol);
    if (sel.truly_busy) {
        // Miss-detection: the advertised rate exceeds capacity, zero service.
        out.scenario = Scenario::S3;
        out.state_index = M + 2;
        out.service_bits = 0.0;
        out.interference_w = p2 * sel.z_sp;
    } else {
        out.scenario = Scenario::S4;
        out.state_index = k_idle + 1;
        const double snr = p2 * sel.z / (p.Bc * p.sigma_n2);
        out.service_bits = data_time * p.Bc * std::log2(1.0 + snr);
        out.interference_w = 0.0;
    }
    return out;
}

namespace {

FrameAggregates run_chunk(const optimizer::SystemParams& p, const optimizer::PowerPolicy& pol,
                          std::uint64_t n, std::uint64_t seed, std::uint64_t chunk_index) {
    rng::Stream stream(seed, chunk_index);
    FrameAggregates agg;
    agg.state_counts.assign(static_cast<std::size_t>(p.M) + 2, 0);
    const double theta = p.theta;
    for (std::uint64_t i = 0; i < n; ++i) {
        const FrameOutcome f = simulate_frame(p, pol, stream);
        const double e = std::exp(-theta * f.service_bits);
        agg.sum_exp_neg_theta_service += e;
        agg.sumsq_exp_neg_theta_service += e * e;
        agg.sum_service += f.service_bits;
        agg.sumsq_service += f.service_bits * f.service_bits;
        agg.sum_interference += f.interference_w;
        agg.sumsq_interference += f.interference_w * f.interference_w;
        ++agg.scenario_counts[static_cast<std::size_t>(f.scenario)];
        ++agg.state_counts[static_cast<std::size_t>(f.state_index - 1)];
        if (f.scenario != Scenario::S3 && f.service_bits == 0.0) ++agg.zero_power_on_frames;
    }
    agg.n_frames = n;
    return agg;
}

} // namespace

FrameAggregates simulate_frames(const optimizer::SystemParams& p,
                                const optimizer::PowerPolicy& pol, std::uint64_t n_frames,
                                std::uint64_t seed, int n_workers) {
    p.validate();
    if (!pol.has_lambda()) throw std::domain_error("simulate_frames: policy lambda unset");
    if (n_frames < 1) throw std::domain_error("simulate_frames: n_frames must be at least 1");

    const std::uint64_t n_chunks = (n_frames + kChunkFrames - 1) / kChunkFrames;
    std::vector<FrameAggregates> partial(n_chunks);

    int workers = n_workers > 0 ? n_workers
                                : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(n_chunks)));

    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t begin = c * kChunkFrames;
            const std::uint64_t count = std::min<std::uint64_t>(kChunkFrames, n_frames - begin);
            partial[c] = run_chunk(p, pol, count, seed, c);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    FrameAggregates total;
    total.state_counts.assign(static_cast<std::size_t>(p.M) + 2, 0);
    for (const auto& part : partial) total.merge(part);
    return total;
}

McEffectiveCapacity estimate_effective_capacity_mc(const FrameAggregates& agg,
                                                   const optimizer::SystemParams& p) {
    if (agg.n_frames < 10000)
        throw std::domain_error("estimate_effective_capacity_mc: need at least 1e4 frames");
    const double mean = agg.mean_exp_neg_theta_service();
    if (!(mean > 0.0))
        throw std::domain_error("estimate_effective_capacity_mc: degenerate zero MGF mean");
    const double norm = p.theta * p.T * p.Bc;
    McEffectiveCapacity out;
    out.re_hat = -std::log(mean) / norm;
    out.std_err = agg.se_exp_neg_theta_service() / (mean * norm);
    return out;
}

QueueTrace simulate_queue(const optimizer::SystemParams& p, const optimizer::PowerPolicy& pol,
                          double arrival_bits_per_frame, std::uint64_t n_frames,
                          std::uint64_t seed) {
    p.validate();
    if (!pol.has_lambda()) throw std::domain_error("simulate_queue: policy lambda unset");
    if (arrival_bits_per_frame < 0.0)
        throw std::domain_error("simulate_queue: arrival must be nonnegative");
    if (n_frames < 1) throw std::domain_error("simulate_queue: n_frames must be at least 1");

    QueueTrace trace;
    trace.n_frames = n_frames;

    // Log-spaced thresholds on the 1/theta scale the tail lives on.
    constexpr int kThresholds = 48;
    const double q_lo = 0.02 / p.theta;
    const double q_hi = 40.0 / p.theta;
    trace.thresholds.resize(kThresholds);
    for (int j = 0; j < kThresholds; ++j)
        trace.thresholds[static_cast<std::size_t>(j)] =
            q_lo * std::pow(q_hi / q_lo, static_cast<double>(j) / (kThresholds - 1));

    std::vector<std::uint64_t> bucket_counts(kThresholds + 1, 0);
    trace.backlog_stride = std::max<std::uint64_t>(1, n_frames / 100000);
    trace.backlog.reserve(static_cast<std::size_t>(n_frames / trace.backlog_stride) + 1);

    rng::Stream stream(seed, 0);
    double backlog = 0.0;
    double sum_service = 0.0;
    for (std::uint64_t i = 0; i < n_frames; ++i) {
        const FrameOutcome f = simulate_frame(p, pol, stream);
        sum_service += f.service_bits;
        backlog = std::max(0.0, backlog + arrival_bits_per_frame - f.service_bits);
        // Largest threshold index with q <= backlog lands in bucket idx;
        // exceedance counts are the suffix sums.
        const auto it = std::upper_bound(trace.thresholds.begin(), trace.thresholds.end(), backlog);
        ++bucket_counts[static_cast<std::size_t>(it - trace.thresholds.begin())];
        if (i % trace.backlog_stride == 0) trace.backlog.push_back(backlog);
    }
    trace.mean_service = sum_service / static_cast<double>(n_frames);
    trace.instability_warning = arrival_bits_per_frame >= trace.mean_service;

    trace.exceedances.assign(kThresholds, 0);
    std::uint64_t suffix = 0;
    for (int j = kThresholds; j >= 1; --j) {
        suffix += bucket_counts[static_cast<std::size_t>(j)];
        trace.exceedances[static_cast<std::size_t>(j - 1)] = suffix;
    }

    // Least squares on ln P(Q >= q) over thresholds with enough exceedances
    // to bound the relative error of the log-tail estimate. Saturated
    // thresholds (P = 1) sit below the queue's typical occupancy and are
    // excluded.
    std::vector<std::size_t> pts;
    for (std::size_t j = 0; j < trace.thresholds.size(); ++j) {
        if (trace.exceedances[j] >= 100 && trace.exceedances[j] < n_frames) pts.push_back(j);
    }
    if (pts.size() >= 5 && !trace.instability_warning) {
        double sx = 0.0, sy = 0.0;
        for (std::size_t j : pts) {
            sx += trace.thresholds[j];
            sy += std::log(static_cast<double>(trace.exceedances[j]) /
                           static_cast<double>(n_frames));
        }
        const double n_pts = static_cast<double>(pts.size());
        const double mx = sx / n_pts, my = sy / n_pts;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t j : pts) {
            const double dx = trace.thresholds[j] - mx;
            const double dy =
                std::log(static_cast<double>(trace.exceedances[j]) /
                         static_cast<double>(n_frames)) -
                my;
            sxx += dx * dx;
            sxy += dx * dy;
        }
        const double b = sxy / sxx;
        double ss_res = 0.0;
        for (std::size_t j : pts) {
            const double fit = my + b * (trace.thresholds[j] - mx);
            const double y = std::log(static_cast<double>(trace.exceedances[j]) /
                                      static_cast<double>(n_frames));
            ss_res += (y - fit) * (y - fit);
        }
        trace.slope = -b;
        trace.slope_std_err = std::sqrt(ss_res / (n_pts - 2.0) / sxx);
        trace.fit_valid = true;
        trace.fit_first = pts.front();
        trace.fit_last = pts.back();
    }
    return trace;
}

} // namespace cogcap::simulator
