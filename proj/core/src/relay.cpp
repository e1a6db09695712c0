#include "risnoma/relay.hpp"

#include <algorithm>
#include <cmath>

namespace risnoma {

namespace {

constexpr std::uint64_t kStreamRelayFd = 6;
constexpr std::uint64_t kStreamRelayHd = 7;

struct HopGains {
    double bs_relay;   // |h_R,1|^2 * d1^-alpha_l
    double relay_v;    // |h_R,v|^2 * d2_v^-alpha_l
    double relay_w;    // |h_R,W|^2 * d2_W^-alpha_l
};

HopGains draw_hops(const NetworkConfig& config, const RelayConfig& relay, Rng& rng) {
    const double m = relay.m_relay;
    return {rng.gamma(m, 1.0 / m) * std::pow(config.d1, -config.alpha_l),
            rng.gamma(m, 1.0 / m) * std::pow(config.d2_v, -config.alpha_l),
            rng.gamma(m, 1.0 / m) * std::pow(config.d2_w, -config.alpha_l)};
}

// min-composition over the four expected hop rates; the std_error of the
// binding branch is reported for each user.
EstimateWithCI compose(const std::vector<EstimateWithCI>& r) {
    const EstimateWithCI& relay_v = r[0];
    const EstimateWithCI& relay_w = r[1];
    const EstimateWithCI& user_v = r[2];
    const EstimateWithCI& user_w = r[3];
    const EstimateWithCI& v = (relay_v.mean <= user_v.mean) ? relay_v : user_v;
    const EstimateWithCI& w = (relay_w.mean <= user_w.mean) ? relay_w : user_w;
    return {v.mean + w.mean, std::hypot(v.std_error, w.std_error), v.trials};
}

}  // namespace

EstimateWithCI fd_relay_throughput(const NetworkConfig& config, const RelayConfig& relay,
                                   const MonteCarloConfig& mc, double p, double sigma2,
                                   int threads) {
    config.validate();
    const double pd = p * std::pow(10.0, -relay.relay_power_offset_db / 10.0);
    const double si = pd * relay.eps_h;
    auto rates = detail::run_trials_multi(
        mc, kStreamRelayFd, 4, resolve_thread_count(threads),
        [&](Rng& rng, std::vector<double>& out) {
            const HopGains g = draw_hops(config, relay, rng);
            out[0] = std::log2(1.0 + p * g.bs_relay * config.a_v_sq /
                                         (p * g.bs_relay * config.a_w_sq + si + sigma2));
            out[1] = std::log2(1.0 + p * g.bs_relay * config.a_w_sq / (si + sigma2));
            out[2] = std::log2(1.0 + pd * g.relay_v * config.a_v_sq /
                                         (pd * g.relay_v * config.a_w_sq + sigma2));
            out[3] = std::log2(1.0 + pd * g.relay_w * config.a_w_sq / sigma2);
        });
    return compose(rates);
}

EstimateWithCI hd_relay_throughput(const NetworkConfig& config, const RelayConfig& relay,
                                   const MonteCarloConfig& mc, double p, double sigma2,
                                   int threads) {
    config.validate();
    const double pd = p * std::pow(10.0, -relay.relay_power_offset_db / 10.0);
    auto rates = detail::run_trials_multi(
        mc, kStreamRelayHd, 4, resolve_thread_count(threads),
        [&](Rng& rng, std::vector<double>& out) {
            const HopGains g = draw_hops(config, relay, rng);
            out[0] = 0.5 * std::log2(1.0 + p * g.bs_relay * config.a_v_sq /
                                               (p * g.bs_relay * config.a_w_sq + sigma2));
            out[1] = 0.5 * std::log2(1.0 + p * g.bs_relay * config.a_w_sq / sigma2);
            out[2] = 0.5 * std::log2(1.0 + pd * g.relay_v * config.a_v_sq /
                                               (pd * g.relay_v * config.a_w_sq + sigma2));
            out[3] = 0.5 * std::log2(1.0 + pd * g.relay_w * config.a_w_sq / sigma2);
        });
    return compose(rates);
}

std::pair<EstimateWithCI, EstimateWithCI> conventional_noma(const NetworkConfig& config,
                                                            const MonteCarloConfig& mc, double p,
                                                            double sigma2, int threads) {
    NetworkConfig no_ris = config;
    no_ris.n_ris = 0;
    return {simulate_rate_w(no_ris, mc, p, sigma2, threads),
            simulate_rate_v(no_ris, mc, p, sigma2, threads)};
}

}  // namespace risnoma
