#include "risnoma/closedform.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace risnoma {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// e^mu * Ei(-mu) for mu > 0, finite for all mu.
double exp_ei_neg(double mu) { return -expx_e1(mu); }

// C^n * integral_0^inf x^n e^{-C s x} / (1+x) dx, with the C powers folded in
// so no intermediate quantity overflows for small C.
double scaled_poly_exp_integral(int n, double c, double s) {
    const double mu = c * s;
    const double sign_lead = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n-1)
    double result = sign_lead * std::pow(c, n) * exp_ei_neg(mu);
    double fact = 1.0;  // (i-1)!
    for (int i = 1; i <= n; ++i) {
        if (i > 1) fact *= (i - 1);
        const double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
        result += sign * fact * std::pow(c, n - i) * std::pow(s, -i);
    }
    return result;
}

// Enumerates compositions a_1 + ... + a_parts = total and invokes fn(a).
template <typename Fn>
void for_each_composition(int total, int parts, std::vector<int>& a, int idx, Fn&& fn) {
    if (idx == parts - 1) {
        a[idx] = total;
        fn(a);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        a[idx] = v;
        for_each_composition(total - v, parts, a, idx + 1, fn);
    }
}

double log_multinomial(int s, const std::vector<int>& a) {
    double lm = ln_gamma(s + 1.0);
    for (int ai : a) lm -= ln_gamma(ai + 1.0);
    return lm;
}

}  // namespace

GammaApprox moment_match(const NetworkConfig& config, GainCase case_label, GainUser user) {
    const double n = static_cast<double>(config.n_ris);
    const double m_ris = (user == GainUser::w) ? config.m_w : config.m_v;
    const double a = (user == GainUser::w) ? config.path_gain_reflected_w()
                                           : config.path_gain_reflected_v();
    const double b = (user == GainUser::w) ? config.path_gain_direct_w()
                                           : config.path_gain_direct_v();
    double mean, var;
    if (case_label == GainCase::worst) {
        const double m_l = (1.0 + config.m1 + m_ris) / (config.m1 * m_ris);
        mean = n * a + b;
        var = n * m_l * a * a + b * b;
    } else {
        const double m_u = (1.0 + n * config.m1 + n * m_ris) / (config.m1 * m_ris);
        mean = n * n * a + b;
        var = n * n * m_u * a * a + b * b;
    }
    if (!(mean > 0.0) || !(var > 0.0))
        throw std::domain_error("moment_match: degenerate configuration (no propagation path)");
    GammaApprox approx;
    approx.k = mean * mean / var;
    approx.lambda = var / mean;
    approx.case_label = case_label;
    return approx;
}

OutageThresholds outage_thresholds(const NetworkConfig& config, double p, double sigma2) {
    OutageThresholds t;
    t.eps_v = std::exp2(config.rate_v) - 1.0;
    t.eps_w = std::exp2(config.rate_w) - 1.0;
    const double sic_margin = config.a_v_sq - config.a_w_sq * t.eps_v;
    if (!(sic_margin > 0.0))
        throw std::domain_error(
            "outage_thresholds: SIC infeasible, a_v^2 - a_W^2*(2^R_v - 1) <= 0");
    if (!(p > 0.0) || !(sigma2 > 0.0))
        throw std::domain_error("outage_thresholds: p and sigma2 must be positive");
    t.i_v = t.eps_v * sigma2 / (p * sic_margin);
    t.i_w = t.eps_w * sigma2 / (p * config.a_w_sq);
    t.i_w_star = std::max(t.i_v, t.i_w);
    return t;
}

double outage_prob(const GammaApprox& approx, const OutageThresholds& thresholds, int n_users) {
    const double p1 = reg_lower_gamma(approx.k, thresholds.i_w_star / approx.lambda);
    return std::pow(p1, n_users);
}

AsymptoticOutage outage_prob_asymptotic(const GammaApprox& approx,
                                        const OutageThresholds& thresholds, int n_users,
                                        int s_max) {
    const double x = thresholds.i_w_star / approx.lambda;
    AsymptoticOutage out;
    if (x == 0.0) return out;

    // sum_{s>=0} x^s / Gamma(k+s+1), truncated at relative 1e-12
    double term = std::exp(-ln_gamma(approx.k + 1.0));
    double series = term;
    bool converged = false;
    for (int s = 1; s <= s_max; ++s) {
        term *= x / (approx.k + s);
        series += term;
        if (std::fabs(term) < 1e-12 * std::fabs(series)) {
            converged = true;
            break;
        }
    }
    out.converged = converged;

    double tail = 0.0;
    for (int j = 0; j <= n_users; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        tail += sign * binom(n_users, j) * std::pow(x, approx.k * n_users + j);
    }
    out.value = std::pow(series, n_users) * tail;
    return out;
}

double outage_prob_no_direct(const NetworkConfig& config, const OutageThresholds& thresholds,
                             GainCase case_label) {
    const double n = static_cast<double>(config.n_ris);
    const double a = config.path_gain_reflected_w();
    const double m_l = (1.0 + config.m1 + config.m_w) / (config.m1 * config.m_w);
    const double m_u = (1.0 + n * config.m1 + n * config.m_w) / (config.m1 * config.m_w);
    const double phi = (case_label == GainCase::worst) ? n / m_l : n * n / m_u;
    // With no direct path the matched scale collapses to lambda = m_l*A
    // (worst) or m_u*A (best).
    const double scale = (case_label == GainCase::worst) ? m_l * a : m_u * a;
    const double x = thresholds.i_w_star / scale;
    const int w = config.n_users;
    double tail = 0.0;
    for (int j = 0; j <= w; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        tail += sign * binom(w, j) * std::pow(x, phi * w + j);
    }
    return tail / std::pow(std::exp(ln_gamma(phi + 1.0)), w);
}

double diversity_order(const NetworkConfig& config, GainCase case_label, AccessMode mode,
                       bool large_n) {
    const double w = static_cast<double>(config.n_users);
    if (mode != AccessMode::ris_noma) return w;
    if (large_n) {
        const double n = static_cast<double>(config.n_ris);
        return n * config.m1 * config.m_w * w / (config.m1 + config.m_w);
    }
    return moment_match(config, case_label).k * w;
}

double ergodic_rate_w_quad(const GammaApprox& approx, const NetworkConfig& config, double p,
                           double sigma2, const QuadratureSpec& quad) {
    const double c = sigma2 / (approx.lambda * p * config.a_w_sq);
    const int w = config.n_users;
    auto integrand = [&](double x) -> double {
        const double f = std::pow(reg_lower_gamma(approx.k, c * x), w);
        return (1.0 - f) / (1.0 + x);
    };
    return quad_to_infinity(integrand, quad) / kLn2;
}

ClosedRate ergodic_rate_w_closed(const GammaApprox& approx, const NetworkConfig& config, double p,
                                 double sigma2) {
    const int kbar = static_cast<int>(std::nearbyint(approx.k));  // round half to even
    const int w = config.n_users;
    if (kbar < 1 || kbar > 12 || w > 8) {
        return {ergodic_rate_w_quad(approx, config, p, sigma2), false};
    }
    const double c = sigma2 / (approx.lambda * p * config.a_w_sq);

    // (1/ln2) sum_{s=1}^{W} C(W,s) (-1)^{s+1}
    //   sum_{a |- s into kbar parts} multinomial(s;a) prod_t ((t-1)!)^(-a_t)
    //   * C^n * J(n, C s),   n = sum_t (t-1) a_t
    double total = 0.0;
    std::vector<int> a(kbar, 0);
    for (int s = 1; s <= w; ++s) {
        const double outer = binom(w, s) * ((s % 2 == 1) ? 1.0 : -1.0);
        double inner = 0.0;
        for_each_composition(s, kbar, a, 0, [&](const std::vector<int>& comp) {
            double log_coeff = log_multinomial(s, comp);
            int n = 0;
            for (int t = 1; t <= kbar; ++t) {
                log_coeff -= comp[t - 1] * ln_gamma(static_cast<double>(t));
                n += (t - 1) * comp[t - 1];
            }
            inner += std::exp(log_coeff) * scaled_poly_exp_integral(n, c, s);
        });
        total += outer * inner;
    }
    return {total / kLn2, true};
}

double ergodic_rate_v(const GammaApprox& approx, const NetworkConfig& config, double p,
                      double sigma2, const ThetaBarPolicy& policy) {
    const double ratio = config.a_v_sq / config.a_w_sq;
    const int v = config.v_index;

    auto rate_at = [&](double g_fejer) -> double {
        if (g_fejer <= 0.0) return 0.0;
        auto integrand = [&](double x) -> double {
            const double margin = config.a_v_sq - config.a_w_sq * x;
            if (margin <= 0.0) return 0.0;
            const double cv = sigma2 * x / (approx.lambda * g_fejer * p * margin);
            const double f = std::pow(reg_lower_gamma(approx.k, cv), v);
            return (1.0 - f) / (1.0 + x);
        };
        return adaptive_quad(integrand, 0.0, ratio) / kLn2;
    };

    if (!policy.average) return rate_at(fejer_kernel(config.n_ris, policy.fixed_value));

    // G_N is even and 2-periodic, so the uniform average over [-1,1] equals
    // the average over [0,1].
    QuadratureSpec outer;
    outer.abs_tol = 1e-9;
    outer.rel_tol = 1e-7;
    auto outer_integrand = [&](double tb) -> double {
        return rate_at(fejer_kernel(config.n_ris, tb));
    };
    return adaptive_quad(outer_integrand, 0.0, 1.0, outer);
}

double oma_rate(const NetworkConfig& config, GainUser user, double p, double sigma2,
                std::uint64_t trials, std::uint64_t seed) {
    const double m_ris = (user == GainUser::w) ? config.m_w : config.m_v;
    const double pl_refl = (user == GainUser::w) ? config.path_gain_reflected_w()
                                                 : config.path_gain_reflected_v();
    const double pl_dir = (user == GainUser::w) ? config.path_gain_direct_w()
                                                : config.path_gain_direct_v();
    const std::uint64_t stream = (user == GainUser::w) ? 40u : 41u;
    double sum = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, stream, t);
        double amp = 0.0;
        for (int i = 0; i < config.n_ris; ++i)
            amp += rng.nakagami_amplitude(config.m1) * rng.nakagami_amplitude(m_ris);
        const double gain = amp * amp * pl_refl + rng.exponential() * pl_dir;
        sum += 0.5 * std::log2(1.0 + gain * p / sigma2);
    }
    return sum / static_cast<double>(trials);
}

double spectral_efficiency(double rate_v, double rate_w) { return rate_v + rate_w; }

double energy_total(const EnergyModel& model, double p_watts, int n_ris) {
    if (model.p_bs_static_w < 0 || model.p_user_w < 0 || model.p_ris_ctrl_w < 0 ||
        model.eps_b < 1.0 || p_watts < 0 || n_ris < 0)
        throw std::domain_error("energy_total: power terms must be nonnegative and eps_b >= 1");
    return model.p_bs_static_w + 2.0 * model.p_user_w + p_watts * model.eps_b +
           n_ris * model.p_ris_ctrl_w;
}

double energy_efficiency(double se, double pe_watts) {
    if (!(pe_watts > 0.0)) throw std::domain_error("energy_efficiency: total power must be positive");
    return se / pe_watts;
}

}  // namespace risnoma
