#include "risnoma/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risnoma {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> polar_coeff(double amplitude, double phase) {
    return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
}
}  // namespace

void NetworkConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("NetworkConfig: " + what); };
    if (n_ris < 0) fail("n_ris must be >= 0");
    if (n_users < 1) fail("n_users must be >= 1");
    if (v_index < 1 || v_index >= n_users) fail("v_index must satisfy 1 <= v < n_users");
    if (m1 < 0.5 || m_w < 0.5 || m_v < 0.5) fail("Nakagami shapes must be >= 0.5");
    if (!(d1 > 0 && d2_w > 0 && d2_v > 0 && d3_w > 0 && d3_v > 0)) fail("distances must be positive");
    if (!(alpha_l > 0 && alpha_n > 0)) fail("path-loss exponents must be positive");
    if (!(a_v_sq > 0 && a_v_sq < 1) || !(a_w_sq > 0 && a_w_sq < 1))
        fail("power allocation factors must lie in (0,1)");
    if (std::fabs(a_v_sq + a_w_sq - 1.0) > 1e-12) fail("power allocation must satisfy a_v^2 + a_W^2 = 1");
    if (!(rate_w > 0 && rate_v > 0)) fail("target rates must be positive");
    const double eps_v = std::exp2(rate_v) - 1.0;
    if (!(a_v_sq - a_w_sq * eps_v > 0))
        fail("SIC infeasible: a_v^2 - a_W^2*(2^R_v - 1) must be > 0");
    if (!(bandwidth_hz > 0)) fail("bandwidth must be positive");
}

ChannelDraw sample_draw(const NetworkConfig& config, Rng& rng) {
    ChannelDraw draw;
    const int n = config.n_ris;
    draw.h.resize(n);
    draw.g_w.resize(n);
    draw.g_v.resize(n);
    for (int i = 0; i < n; ++i) draw.h[i] = polar_coeff(rng.nakagami_amplitude(config.m1), rng.phase());
    for (int i = 0; i < n; ++i) draw.g_w[i] = polar_coeff(rng.nakagami_amplitude(config.m_w), rng.phase());
    draw.r_w = polar_coeff(std::sqrt(rng.exponential()), rng.phase());
    if (config.aligned_pair) {
        draw.g_v = draw.g_w;
        draw.r_v = draw.r_w;
    } else {
        for (int i = 0; i < n; ++i) draw.g_v[i] = polar_coeff(rng.nakagami_amplitude(config.m_v), rng.phase());
        draw.r_v = polar_coeff(std::sqrt(rng.exponential()), rng.phase());
    }
    return draw;
}

PhaseDesign design_phases(const ChannelDraw& draw) {
    PhaseDesign design;
    design.theta.resize(draw.h.size());
    const double target = std::arg(draw.r_w);
    for (std::size_t i = 0; i < draw.h.size(); ++i) {
        double theta = target - std::arg(draw.g_w[i] * draw.h[i]);
        theta = std::fmod(theta, kTwoPi);
        if (theta < 0.0) theta += kTwoPi;
        design.theta[i] = theta;
    }
    return design;
}

double effective_gain_w(const ChannelDraw& draw, const NetworkConfig& config) {
    const double pl_refl = config.path_gain_reflected_w();
    const double pl_dir = config.path_gain_direct_w();
    double amp_sum = 0.0;
    for (std::size_t i = 0; i < draw.h.size(); ++i)
        amp_sum += std::abs(draw.g_w[i]) * std::abs(draw.h[i]);
    const double r_amp = std::abs(draw.r_w);
    if (config.coherent_direct) {
        const double field = amp_sum * std::sqrt(pl_refl) + r_amp * std::sqrt(pl_dir);
        return field * field;
    }
    return amp_sum * amp_sum * pl_refl + r_amp * r_amp * pl_dir;
}

double effective_gain_v(const ChannelDraw& draw, const PhaseDesign& phases,
                        const NetworkConfig& config) {
    const double pl_refl = std::sqrt(config.path_gain_reflected_v());
    const double pl_dir = std::sqrt(config.path_gain_direct_v());
    std::complex<double> field{0.0, 0.0};
    for (std::size_t i = 0; i < draw.h.size(); ++i)
        field += draw.g_v[i] * polar_coeff(1.0, phases.theta[i]) * draw.h[i];
    field = field * pl_refl + draw.r_v * pl_dir;
    return std::norm(field);
}

double fejer_kernel(int n_ris, double theta_bar) {
    if (n_ris < 1) throw std::domain_error("fejer_kernel: n_ris must be >= 1");
    const double s = std::sin(0.5 * M_PI * theta_bar);
    if (std::fabs(s) < 1e-12) return 1.0;  // removable singularity at even integers
    const double num = std::sin(0.5 * n_ris * M_PI * theta_bar);
    const double val = (num * num) / (static_cast<double>(n_ris) * n_ris * s * s);
    return std::min(1.0, val);
}

}  // namespace risnoma
