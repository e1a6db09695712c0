#pragma once

#include <cstdint>

#include "risnoma/channel.hpp"
#include "risnoma/specfun.hpp"

namespace risnoma {

enum class GainCase { worst, best };

// Gamma(k, lambda) fit of the effective channel-gain distribution obtained by
// matching mean and variance. k*lambda is the matched mean, k*lambda^2 the
// matched variance.
struct GammaApprox {
    double k = 1.0;
    double lambda = 1.0;
    GainCase case_label = GainCase::worst;

    double mean() const { return k * lambda; }
    double variance() const { return k * lambda * lambda; }
};

// Linear SINR-gain thresholds entering the outage probability.
struct OutageThresholds {
    double i_v = 0.0;       // threshold from decoding user v's signal
    double i_w = 0.0;       // threshold from decoding user W's own signal
    double i_w_star = 0.0;  // max of the two
    double eps_v = 0.0;     // 2^R_v - 1
    double eps_w = 0.0;     // 2^R_W - 1
};

// Power terms of the network-wide energy model.
struct EnergyModel {
    double p_bs_static_w = 7.943282347242816;  // 9 dBW
    double eps_b = 1.2;                        // BS amplifier coefficient
    double p_user_w = 0.01;                    // 10 dBm per user
    double p_ris_ctrl_w = 0.01;                // 10 dBm per RIS element
};

// Which user's geometry/fading parameters feed the moment match.
enum class GainUser { w, v };

// Gamma moment match of the effective gain. Worst case matches the plain
// power sum of the reflected products; best case matches the
// Cauchy-Schwarz-inflated sum with N^2 scaling.
GammaApprox moment_match(const NetworkConfig& config, GainCase case_label,
                         GainUser user = GainUser::w);

// SINR-gain thresholds for transmit power p and noise power sigma2 (same
// linear units). Throws std::domain_error when SIC is infeasible.
OutageThresholds outage_thresholds(const NetworkConfig& config, double p, double sigma2);

// Closed-form outage probability of the prioritized user:
//   P = P_reg(k, I*/lambda)^W.
double outage_prob(const GammaApprox& approx, const OutageThresholds& thresholds, int n_users);

struct AsymptoticOutage {
    double value = 0.0;
    bool converged = true;
};

// High-SNR series approximation of the outage probability; truncates when the
// relative term drops below 1e-12 or after s_max terms.
AsymptoticOutage outage_prob_asymptotic(const GammaApprox& approx,
                                        const OutageThresholds& thresholds, int n_users,
                                        int s_max = 200);

// Leading-order outage approximation in the no-direct-link regime, with
// phi1 = N/m_l (worst) and phi2 = N^2/m_u (best).
double outage_prob_no_direct(const NetworkConfig& config, const OutageThresholds& thresholds,
                             GainCase case_label);

enum class AccessMode { ris_noma, conventional_noma, oma };

// Diversity order of the prioritized user. For ris_noma returns k*W from the
// matched Gamma shape; large_n switches to the large-N limit
// N*m1*mW*W/(m1+mW). Conventional NOMA and OMA both give W.
double diversity_order(const NetworkConfig& config, GainCase case_label, AccessMode mode,
                       bool large_n = false);

// Reference ergodic rate of user W by adaptive quadrature of
//   (1/ln 2) * integral (1 - P_reg(k, C x)^W) / (1+x) dx,   C = sigma2/(lambda p a_W^2).
double ergodic_rate_w_quad(const GammaApprox& approx, const NetworkConfig& config, double p,
                           double sigma2, const QuadratureSpec& quad = {});

struct ClosedRate {
    double value = 0.0;
    bool closed_form = true;  // false when the guard forced the quadrature fallback
};

// Closed-form fast path for the same rate, built from the multinomial
// expansion over compositions and the identity
//   integral_0^inf x^n e^{-mu x}/(1+x) dx
//     = (-1)^{n-1} e^mu Ei(-mu) + sum_{i=1}^{n} (i-1)! (-1)^{n-i} mu^{-i}.
// The shape is rounded half-to-even to kbar; guarded to kbar <= 12, W <= 8.
ClosedRate ergodic_rate_w_closed(const GammaApprox& approx, const NetworkConfig& config, double p,
                                 double sigma2);

// Residual-beamforming policy for the interfered user.
struct ThetaBarPolicy {
    bool average = true;     // integrate theta_bar uniformly over [-1,1]
    double fixed_value = 0.0;

    static ThetaBarPolicy averaged() { return {true, 0.0}; }
    static ThetaBarPolicy fixed(double theta_bar) { return {false, theta_bar}; }
};

// Ergodic rate of user v under phases designed for user W; the Fejer kernel
// scales the effective gain and the integral runs up to the SINR ceiling
// a_v^2/a_W^2.
double ergodic_rate_v(const GammaApprox& approx, const NetworkConfig& config, double p,
                      double sigma2, const ThetaBarPolicy& policy = ThetaBarPolicy::averaged());

// Monte Carlo OMA baseline: each user gets the full power and a dedicated
// slot with the surface serving it coherently, at a 1/2 pre-log.
double oma_rate(const NetworkConfig& config, GainUser user, double p, double sigma2,
                std::uint64_t trials, std::uint64_t seed);

// Sum spectral efficiency of the pair.
double spectral_efficiency(double rate_v, double rate_w);

// Total consumed power P_e = P_Bs + 2 P_U + p*eps_b + N*P_L (watts).
double energy_total(const EnergyModel& model, double p_watts, int n_ris);

// Energy efficiency S / P_e.
double energy_efficiency(double se, double pe_watts);

}  // namespace risnoma
