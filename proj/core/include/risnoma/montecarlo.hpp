#pragma once

#include <atomic>
#include <stdexcept>
#include <cstdint>
#include <thread>
#include <vector>

#include "risnoma/channel.hpp"
#include "risnoma/closedform.hpp"
#include "risnoma/rng.hpp"

namespace risnoma {

struct MonteCarloConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t master_seed = 42;
    std::uint64_t batch_size = 65536;  // scheduling granularity hint
};

struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Number of worker threads: an explicit request wins, then the
// RIS_NOMA_THREADS environment variable, then hardware concurrency.
int resolve_thread_count(int requested = 0);

namespace detail {

// Trials are processed in fixed 1024-trial chunks whose partial sums are
// reduced in chunk order with Neumaier compensation. The summation tree is a
// function of the trial count alone, so estimates are bit-identical for any
// thread count and any batch-size hint. Each trial seeds its own generator
// from (master_seed, stream_id, trial).
constexpr std::uint64_t kChunk = 1024;

struct KahanAcc {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

template <typename TrialFn>
std::vector<EstimateWithCI> run_trials_multi(const MonteCarloConfig& mc, std::uint64_t stream_id,
                                             int n_outputs, int threads, TrialFn&& trial_fn) {
    if (mc.trials < 1) throw std::invalid_argument("MonteCarloConfig: trials must be >= 1");
    const std::uint64_t n_chunks = (mc.trials + kChunk - 1) / kChunk;
    std::vector<double> chunk_sum(n_chunks * n_outputs, 0.0);
    std::vector<double> chunk_sumsq(n_chunks * n_outputs, 0.0);

    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(n_chunks)));
    std::atomic<std::uint64_t> next_chunk{0};
    auto worker = [&]() {
        std::vector<double> out(n_outputs);
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(lo + kChunk, mc.trials);
            std::vector<double> s(n_outputs, 0.0), s2(n_outputs, 0.0);
            for (std::uint64_t t = lo; t < hi; ++t) {
                Rng rng(mc.master_seed, stream_id, t);
                trial_fn(rng, out);
                for (int j = 0; j < n_outputs; ++j) {
                    s[j] += out[j];
                    s2[j] += out[j] * out[j];
                }
            }
            for (int j = 0; j < n_outputs; ++j) {
                chunk_sum[c * n_outputs + j] = s[j];
                chunk_sumsq[c * n_outputs + j] = s2[j];
            }
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<EstimateWithCI> result(n_outputs);
    for (int j = 0; j < n_outputs; ++j) {
        KahanAcc sum, sumsq;
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            sum.add(chunk_sum[c * n_outputs + j]);
            sumsq.add(chunk_sumsq[c * n_outputs + j]);
        }
        const double n = static_cast<double>(mc.trials);
        const double mean = sum.value() / n;
        double var = 0.0;
        if (mc.trials > 1) var = std::max(0.0, (sumsq.value() - n * mean * mean) / (n - 1.0));
        result[j] = {mean, std::sqrt(var / n), mc.trials};
    }
    return result;
}

template <typename TrialFn>
EstimateWithCI run_trials(const MonteCarloConfig& mc, std::uint64_t stream_id, int threads,
                          TrialFn&& trial_fn) {
    auto res = run_trials_multi(mc, stream_id, 1, threads,
                                [&](Rng& rng, std::vector<double>& out) { out[0] = trial_fn(rng); });
    return res[0];
}

}  // namespace detail

// Empirical outage probability of the prioritized user: W i.i.d. effective
// gains are drawn with user-W parameters, the maximum is taken, and both SIC
// stage rates are compared against their targets with strict inequality.
EstimateWithCI simulate_outage_w(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                                 double sigma2, int threads = 0);

// Empirical ergodic rate of the prioritized user (maximum-order statistic).
EstimateWithCI simulate_rate_w(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                               double sigma2, int threads = 0);

// Empirical ergodic rate of user v under the exact complex-phase model with
// phases designed for user W.
EstimateWithCI simulate_rate_v(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                               double sigma2, int threads = 0);

// Empirical OMA rate with confidence interval (1/2 pre-log, full power,
// dedicated slot per user).
EstimateWithCI simulate_oma(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                            double sigma2, GainUser user, int threads = 0);

}  // namespace risnoma
