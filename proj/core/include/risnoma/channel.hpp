#pragma once

#include <complex>
#include <vector>

#include "risnoma/rng.hpp"

namespace risnoma {

// Full scenario description: geometry, fading, power split and target rates.
// Distances are in meters, rates in bits per channel use, powers in the dBm /
// mW convention used throughout.
struct NetworkConfig {
    int n_ris = 1;        // number of RIS elements N (0 allowed: no reflected path)
    int n_users = 2;      // cluster size W
    int v_index = 1;      // paired weak user rank v, 1 <= v < W

    double m1 = 1.0;      // Nakagami shape, BS -> RIS
    double m_w = 1.0;     // Nakagami shape, RIS -> user W
    double m_v = 1.0;     // Nakagami shape, RIS -> user v

    double d1 = 60.0;     // BS -> RIS
    double d2_w = 80.0;   // RIS -> user W
    double d2_v = 100.0;  // RIS -> user v
    double d3_w = 100.0;  // BS -> user W
    double d3_v = 100.0;  // BS -> user v

    double alpha_l = 2.2;  // path-loss exponent, reflected links
    double alpha_n = 3.5;  // path-loss exponent, direct links

    double a_v_sq = 0.6;   // power allocation, user v
    double a_w_sq = 0.4;   // power allocation, user W

    double rate_w = 1.5;   // target rate R_W
    double rate_v = 1.0;   // target rate R_v

    double ref_loss_db = -30.0;    // attenuation at the 1 m reference distance
    double bandwidth_hz = 1e6;
    double noise_dbm = -114.0;     // -174 + 10 log10(bandwidth)

    bool direct_link = true;       // false models the hostile no-BS-user-link case
    bool coherent_direct = false;  // treat direct + reflected fields as one coherent sum
    bool aligned_pair = false;     // user v shares user W's channel vector (theta_bar -> 0)

    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;

    double noise_mw() const { return std::pow(10.0, noise_dbm / 10.0); }

    // Transmit power folded with the reference-distance attenuation; this is
    // the power that multiplies the bare d^-alpha factors.
    double tx_power_mw(double tx_dbm) const {
        return std::pow(10.0, (tx_dbm + ref_loss_db) / 10.0);
    }

    // Reflected- and direct-path power attenuation factors for each user.
    double path_gain_reflected_w() const { return std::pow(d1 * d2_w, -alpha_l); }
    double path_gain_reflected_v() const { return std::pow(d1 * d2_v, -alpha_l); }
    double path_gain_direct_w() const { return direct_link ? std::pow(d3_w, -alpha_n) : 0.0; }
    double path_gain_direct_v() const { return direct_link ? std::pow(d3_v, -alpha_n) : 0.0; }
};

// One realization of every small-scale fading coefficient.
struct ChannelDraw {
    std::vector<std::complex<double>> h;    // BS -> RIS, length N
    std::vector<std::complex<double>> g_w;  // RIS -> user W, length N
    std::vector<std::complex<double>> g_v;  // RIS -> user v, length N
    std::complex<double> r_w;               // BS -> user W direct
    std::complex<double> r_v;               // BS -> user v direct
};

// Phase shifts applied by the surface; amplitude coefficients are pinned to 1.
struct PhaseDesign {
    std::vector<double> theta;  // in [0, 2*pi)
};

// Samples Nakagami amplitudes with independent uniform phases; direct links
// are Rayleigh (unit-mean exponential power).
ChannelDraw sample_draw(const NetworkConfig& config, Rng& rng);

// Aligns every reflected term with the direct link of user W:
// theta_n = arg(r_W) - arg(g_{W,n} h_n) mod 2*pi.
PhaseDesign design_phases(const ChannelDraw& draw);

// Post-design effective channel gain of the prioritized user: the co-phased
// reflected amplitudes add up and combine with the direct power (MRC), or as
// a single coherent field when config.coherent_direct is set.
double effective_gain_w(const ChannelDraw& draw, const NetworkConfig& config);

// Effective channel gain of user v under phases designed for user W: the
// exact complex field sum of reflected and direct components.
double effective_gain_v(const ChannelDraw& draw, const PhaseDesign& phases,
                        const NetworkConfig& config);

// Normalized Fejer kernel G_N(theta_bar) = sin^2(N pi t/2) / (N^2 sin^2(pi t/2)),
// period 2, G_N(0) = 1.
double fejer_kernel(int n_ris, double theta_bar);

}  // namespace risnoma
