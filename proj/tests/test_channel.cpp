#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "risnoma/channel.hpp"

using namespace risnoma;

namespace {

NetworkConfig unit_config(int n_ris) {
    NetworkConfig cfg;
    cfg.n_ris = n_ris;
    cfg.d1 = cfg.d2_w = cfg.d2_v = cfg.d3_w = cfg.d3_v = 1.0;
    return cfg;
}

}  // namespace

TEST_CASE("config validation names the violated constraint") {
    NetworkConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    NetworkConfig bad = cfg;
    bad.a_v_sq = 0.7;  // sum != 1
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("a_v^2 + a_W^2"), std::invalid_argument);

    bad = cfg;
    bad.a_v_sq = 0.5;
    bad.a_w_sq = 0.5;
    bad.rate_v = 2.0;  // eps_v = 3 > a_v^2/a_W^2
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("SIC"), std::invalid_argument);

    bad = cfg;
    bad.v_index = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.m1 = 0.2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.d2_w = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sampled powers have unit mean and the Gamma(m,1/m) variance") {
    NetworkConfig cfg = unit_config(4);
    cfg.m1 = 3.0;
    const int trials = 200000;
    double mean_h2 = 0.0, var_h2 = 0.0, mean_g2 = 0.0, mean_r2 = 0.0;
    const double n_samples = trials * 4.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(99, 0, t);
        const ChannelDraw d = sample_draw(cfg, rng);
        for (int i = 0; i < 4; ++i) {
            const double h2 = std::norm(d.h[i]);
            mean_h2 += h2;
            var_h2 += (h2 - 1.0) * (h2 - 1.0);
            mean_g2 += std::norm(d.g_w[i]);
        }
        mean_r2 += std::norm(d.r_w);
    }
    mean_h2 /= n_samples;
    var_h2 = var_h2 / n_samples - (mean_h2 - 1.0) * (mean_h2 - 1.0);
    mean_g2 /= n_samples;
    mean_r2 /= trials;
    CHECK(mean_h2 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(var_h2 == doctest::Approx(1.0 / 3.0).epsilon(0.03));  // Gamma(3,1/3) variance
    CHECK(mean_g2 == doctest::Approx(1.0).epsilon(0.01));       // m_w = 1: unit-mean exponential
    CHECK(mean_r2 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("fixed seed reproduces the identical draw sequence") {
    NetworkConfig cfg;
    cfg.n_ris = 3;
    for (int t : {0, 1, 77}) {
        Rng a(1234, 5, t), b(1234, 5, t);
        const ChannelDraw da = sample_draw(cfg, a);
        const ChannelDraw db = sample_draw(cfg, b);
        for (int i = 0; i < 3; ++i) {
            CHECK(da.h[i] == db.h[i]);
            CHECK(da.g_w[i] == db.g_w[i]);
            CHECK(da.g_v[i] == db.g_v[i]);
        }
        CHECK(da.r_w == db.r_w);
        CHECK(da.r_v == db.r_v);
    }
}

TEST_CASE("phase design aligns every reflected term with the direct link") {
    ChannelDraw draw;
    draw.h = {{1.0, 0.0}, {0.0, 1.0}};  // second has phase pi/2
    draw.g_w = {{1.0, 0.0}, {1.0, 0.0}};
    draw.g_v = draw.g_w;
    draw.r_w = {2.0, 0.0};
    draw.r_v = draw.r_w;
    const PhaseDesign design = design_phases(draw);
    CHECK(design.theta[0] == doctest::Approx(0.0));
    CHECK(design.theta[1] == doctest::Approx(3.0 * M_PI / 2.0));

    // randomized draws: arg(g e^{j theta} h) == arg(r_W) for every element
    NetworkConfig cfg;
    cfg.n_ris = 5;
    for (int t = 0; t < 50; ++t) {
        Rng rng(7, 1, t);
        const ChannelDraw d = sample_draw(cfg, rng);
        const PhaseDesign ph = design_phases(d);
        for (int i = 0; i < 5; ++i) {
            const std::complex<double> rotated =
                d.g_w[i] * std::polar(1.0, ph.theta[i]) * d.h[i];
            double delta = std::arg(rotated) - std::arg(d.r_w);
            delta = std::remainder(delta, 2.0 * M_PI);
            CHECK(std::fabs(delta) < 1e-12);
        }
    }
}

TEST_CASE("effective gain of the prioritized user") {
    NetworkConfig cfg = unit_config(1);
    ChannelDraw draw;
    draw.h = {{1.0, 0.0}};
    draw.g_w = {{1.0, 0.0}};
    draw.g_v = draw.g_w;
    draw.r_w = {0.0, 0.0};
    draw.r_v = draw.r_w;
    CHECK(effective_gain_w(draw, cfg) == doctest::Approx(1.0));

    // two co-phased unit reflections add in amplitude: gain 4
    NetworkConfig cfg2 = unit_config(2);
    draw.h = {{1.0, 0.0}, {1.0, 0.0}};
    draw.g_w = {{1.0, 0.0}, {1.0, 0.0}};
    draw.g_v = draw.g_w;
    CHECK(effective_gain_w(draw, cfg2) == doctest::Approx(4.0));

    // reflected path-loss factor at the baseline geometry
    NetworkConfig baseline;
    CHECK(baseline.path_gain_reflected_w() == doctest::Approx(7.967e-9).epsilon(1e-3));
}

TEST_CASE("effective gain of user v") {
    // destructive interference: reflected and direct fields cancel
    NetworkConfig cfg = unit_config(1);
    ChannelDraw draw;
    draw.h = {{1.0, 0.0}};
    draw.g_w = {{1.0, 0.0}};
    draw.r_w = {1.0, 0.0};  // theta_n = 0
    draw.g_v = {{-1.0, 0.0}};
    draw.r_v = {1.0, 0.0};
    const PhaseDesign ph = design_phases(draw);
    CHECK(effective_gain_v(draw, ph, cfg) == doctest::Approx(0.0).scale(1).epsilon(1e-12));

    // a user sharing W's channel vector sees exactly the coherent W gain
    NetworkConfig coh = unit_config(3);
    coh.coherent_direct = true;
    for (int t = 0; t < 100; ++t) {
        Rng rng(21, 2, t);
        ChannelDraw d = sample_draw(coh, rng);
        d.g_v = d.g_w;
        d.r_v = d.r_w;
        const PhaseDesign p = design_phases(d);
        CHECK(effective_gain_v(d, p, coh) ==
              doctest::Approx(effective_gain_w(d, coh)).epsilon(1e-10));
    }
}

TEST_CASE("designed phases maximize the coherent field over random phases") {
    NetworkConfig cfg;
    cfg.n_ris = 4;
    cfg.coherent_direct = true;
    Rng rng(3, 3, 0);
    for (int t = 0; t < 20; ++t) {
        Rng draw_rng(3, 4, t);
        const ChannelDraw d = sample_draw(cfg, draw_rng);
        const double designed = effective_gain_w(d, cfg);
        const double sa = std::sqrt(cfg.path_gain_reflected_w());
        const double sb = std::sqrt(cfg.path_gain_direct_w());
        for (int k = 0; k < 1000; ++k) {
            std::complex<double> field = d.r_w * sb;
            for (int i = 0; i < 4; ++i)
                field += d.g_w[i] * std::polar(1.0, rng.phase()) * d.h[i] * sa;
            CHECK(std::norm(field) <= designed * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("user-v field obeys the amplitude-sum upper bound per draw") {
    NetworkConfig cfg;
    cfg.n_ris = 6;
    for (int t = 0; t < 200; ++t) {
        Rng rng(17, 5, t);
        const ChannelDraw d = sample_draw(cfg, rng);
        const PhaseDesign ph = design_phases(d);
        double amp_bound = std::fabs(std::abs(d.r_v)) * std::sqrt(cfg.path_gain_direct_v());
        for (int i = 0; i < 6; ++i)
            amp_bound += std::abs(d.g_v[i]) * std::abs(d.h[i]) * std::sqrt(cfg.path_gain_reflected_v());
        CHECK(effective_gain_v(d, ph, cfg) <= amp_bound * amp_bound * (1.0 + 1e-12));
    }
}

TEST_CASE("mean user-v gain stays below mean user-W gain at the baseline geometry") {
    NetworkConfig cfg;
    cfg.n_ris = 3;
    double sum_w = 0.0, sum_v = 0.0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(31, 6, t);
        const ChannelDraw d = sample_draw(cfg, rng);
        const PhaseDesign ph = design_phases(d);
        sum_w += effective_gain_w(d, cfg);
        sum_v += effective_gain_v(d, ph, cfg);
    }
    CHECK(sum_v / trials < sum_w / trials);
}

TEST_CASE("Fejer kernel") {
    CHECK(fejer_kernel(1, 0.37) == doctest::Approx(1.0));
    CHECK(fejer_kernel(7, 0.0) == doctest::Approx(1.0));
    CHECK(fejer_kernel(2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    for (int n : {1, 2, 3, 8, 16, 64}) {
        for (int i = 0; i <= 10000; ++i) {
            const double tb = -1.0 + 2.0 * i / 10000.0;
            const double g = fejer_kernel(n, tb);
            CHECK(g >= 0.0);
            CHECK(g <= 1.0);
        }
    }
    // period 2
    CHECK(fejer_kernel(5, 0.3) == doctest::Approx(fejer_kernel(5, 2.3)).epsilon(1e-9));
    CHECK_THROWS_AS(fejer_kernel(0, 0.1), std::domain_error);
}
