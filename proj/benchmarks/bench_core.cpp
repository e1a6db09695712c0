#include <benchmark/benchmark.h>

#include "risnoma/montecarlo.hpp"
#include "risnoma/specfun.hpp"

using namespace risnoma;

static void BM_RegLowerGamma(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 0.001;
        if (x > 40.0) x = 0.001;
        benchmark::DoNotOptimize(reg_lower_gamma(1.44, x));
    }
}
BENCHMARK(BM_RegLowerGamma);

static void BM_ExpxE1(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 0.01;
        if (x > 80.0) x = 0.01;
        benchmark::DoNotOptimize(expx_e1(x));
    }
}
BENCHMARK(BM_ExpxE1);

static void BM_ErgodicRateQuad(benchmark::State& state) {
    NetworkConfig cfg;
    cfg.n_ris = static_cast<int>(state.range(0));
    const GammaApprox g = moment_match(cfg, GainCase::worst);
    const double p = cfg.tx_power_mw(20.0);
    for (auto _ : state) benchmark::DoNotOptimize(ergodic_rate_w_quad(g, cfg, p, cfg.noise_mw()));
}
BENCHMARK(BM_ErgodicRateQuad)->Arg(1)->Arg(8)->Arg(32);

static void BM_ErgodicRateV_Averaged(benchmark::State& state) {
    NetworkConfig cfg;
    cfg.n_ris = static_cast<int>(state.range(0));
    const GammaApprox g = moment_match(cfg, GainCase::worst, GainUser::v);
    const double p = cfg.tx_power_mw(20.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(ergodic_rate_v(g, cfg, p, cfg.noise_mw()));
}
BENCHMARK(BM_ErgodicRateV_Averaged)->Arg(4)->Arg(16);

static void BM_SampleDrawAndGains(benchmark::State& state) {
    NetworkConfig cfg;
    cfg.n_ris = static_cast<int>(state.range(0));
    std::uint64_t t = 0;
    for (auto _ : state) {
        Rng rng(7, 0, t++);
        const ChannelDraw d = sample_draw(cfg, rng);
        const PhaseDesign ph = design_phases(d);
        benchmark::DoNotOptimize(effective_gain_w(d, cfg));
        benchmark::DoNotOptimize(effective_gain_v(d, ph, cfg));
    }
}
BENCHMARK(BM_SampleDrawAndGains)->Arg(1)->Arg(8)->Arg(32);

static void BM_SimulateOutage(benchmark::State& state) {
    NetworkConfig cfg;
    cfg.n_ris = 3;
    MonteCarloConfig mc;
    mc.trials = 20000;
    const double p = cfg.tx_power_mw(0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_outage_w(cfg, mc, p, cfg.noise_mw(), 1));
}
BENCHMARK(BM_SimulateOutage)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
