#pragma once

#include <utility>

#include "risnoma/montecarlo.hpp"

namespace risnoma {

// Decode-and-forward relay baseline parameters. The relay reuses d1 for the
// BS hop and d2_w / d2_v for the user hops, with Nakagami fading of shape
// m_relay on every hop and no BS-user links.
struct RelayConfig {
    double eps_h = 0.1;                 // loop-back self-interference coefficient
    double relay_power_offset_db = 10;  // relay transmits this many dB below the BS
    double m_relay = 3.0;
};

// Full-duplex network throughput: min{relay-decode, user-decode} per user,
// summed over the pair. The relay-side SINRs carry the p_d*eps_h loop-back
// term in the denominator.
EstimateWithCI fd_relay_throughput(const NetworkConfig& config, const RelayConfig& relay,
                                   const MonteCarloConfig& mc, double p, double sigma2,
                                   int threads = 0);

// Half-duplex analogue with a 1/2 pre-log on every hop and no
// self-interference.
EstimateWithCI hd_relay_throughput(const NetworkConfig& config, const RelayConfig& relay,
                                   const MonteCarloConfig& mc, double p, double sigma2,
                                   int threads = 0);

// Direct-link-only NOMA (the surface removed): rates of the paired users.
std::pair<EstimateWithCI, EstimateWithCI> conventional_noma(const NetworkConfig& config,
                                                            const MonteCarloConfig& mc, double p,
                                                            double sigma2, int threads = 0);

}  // namespace risnoma
