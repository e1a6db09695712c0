#include "risnoma/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace risnoma {

namespace {

// Stream ids keep the per-operation substreams disjoint.
constexpr std::uint64_t kStreamOutageW = 1;
constexpr std::uint64_t kStreamRateW = 2;
constexpr std::uint64_t kStreamRateV = 3;
constexpr std::uint64_t kStreamOmaW = 4;
constexpr std::uint64_t kStreamOmaV = 5;

// Amplitude-only draw of user W's links; phases drop out of the co-phased
// gain, so skipping them halves the sampling cost without changing the law.
double draw_gain_w(const NetworkConfig& config, Rng& rng) {
    double amp = 0.0;
    for (int i = 0; i < config.n_ris; ++i)
        amp += rng.nakagami_amplitude(config.m1) * rng.nakagami_amplitude(config.m_w);
    const double r2 = rng.exponential();
    const double pl_refl = config.path_gain_reflected_w();
    const double pl_dir = config.path_gain_direct_w();
    if (config.coherent_direct) {
        const double field = amp * std::sqrt(pl_refl) + std::sqrt(r2 * pl_dir);
        return field * field;
    }
    return amp * amp * pl_refl + r2 * pl_dir;
}

double draw_max_gain_w(const NetworkConfig& config, Rng& rng) {
    double best = 0.0;
    for (int u = 0; u < config.n_users; ++u) best = std::max(best, draw_gain_w(config, rng));
    return best;
}

}  // namespace

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RIS_NOMA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

EstimateWithCI simulate_outage_w(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                                 double sigma2, int threads) {
    config.validate();
    const double eps_v = std::exp2(config.rate_v) - 1.0;
    const double eps_w = std::exp2(config.rate_w) - 1.0;
    return detail::run_trials(mc, kStreamOutageW, resolve_thread_count(threads), [&](Rng& rng) {
        const double g = draw_max_gain_w(config, rng);
        const double sinr_wv = g * p * config.a_v_sq / (g * p * config.a_w_sq + sigma2);
        const double sinr_w = g * p * config.a_w_sq / sigma2;
        const bool outage = (sinr_wv < eps_v) || (sinr_w < eps_w);
        return outage ? 1.0 : 0.0;
    });
}

EstimateWithCI simulate_rate_w(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                               double sigma2, int threads) {
    config.validate();
    return detail::run_trials(mc, kStreamRateW, resolve_thread_count(threads), [&](Rng& rng) {
        const double g = draw_max_gain_w(config, rng);
        return std::log2(1.0 + g * p * config.a_w_sq / sigma2);
    });
}

EstimateWithCI simulate_rate_v(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                               double sigma2, int threads) {
    config.validate();
    return detail::run_trials(mc, kStreamRateV, resolve_thread_count(threads), [&](Rng& rng) {
        const ChannelDraw draw = sample_draw(config, rng);
        const PhaseDesign phases = design_phases(draw);
        const double g = effective_gain_v(draw, phases, config);
        const double sinr = g * p * config.a_v_sq / (g * p * config.a_w_sq + sigma2);
        return std::log2(1.0 + sinr);
    });
}

EstimateWithCI simulate_oma(const NetworkConfig& config, const MonteCarloConfig& mc, double p,
                            double sigma2, GainUser user, int threads) {
    config.validate();
    const double m_ris = (user == GainUser::w) ? config.m_w : config.m_v;
    const double pl_refl = (user == GainUser::w) ? config.path_gain_reflected_w()
                                                 : config.path_gain_reflected_v();
    const double pl_dir = (user == GainUser::w) ? config.path_gain_direct_w()
                                                : config.path_gain_direct_v();
    const std::uint64_t stream = (user == GainUser::w) ? kStreamOmaW : kStreamOmaV;
    return detail::run_trials(mc, stream, resolve_thread_count(threads), [&](Rng& rng) {
        double amp = 0.0;
        for (int i = 0; i < config.n_ris; ++i)
            amp += rng.nakagami_amplitude(config.m1) * rng.nakagami_amplitude(m_ris);
        const double gain = amp * amp * pl_refl + rng.exponential() * pl_dir;
        return 0.5 * std::log2(1.0 + gain * p / sigma2);
    });
}

}  // namespace risnoma
