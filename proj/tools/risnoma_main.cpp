// Experiment runner for the RIS-aided NOMA link-level laboratory.
//
//   risnoma run --preset fig2 --out fig2.csv [--config file] [--seed N] [--trials N]
//   risnoma fit-slope --in fig2.csv --metric op_worst_N3 [--case worst] [--window 1.0]
//   risnoma --list-presets
//
// The RIS_NOMA_THREADS environment variable caps worker parallelism.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "risnoma/sweep.hpp"

int main(int argc, char** argv) {
    CLI::App app{"RIS-aided NOMA downlink performance laboratory"};
    app.require_subcommand(0, 1);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print available presets and exit");

    auto* run_cmd = app.add_subcommand("run", "execute a preset or custom sweep and emit CSV");
    std::string preset = "custom";
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t trials = 0;
    run_cmd->add_option("--preset", preset, "preset name (see --list-presets)");
    run_cmd->add_option("--config", config_path, "key = value override file");
    run_cmd->add_option("--out", out_path, "output CSV path (default <preset>.csv)");
    run_cmd->add_option("--seed", seed, "master seed")->each([&](const std::string&) { seed_set = true; });
    run_cmd->add_option("--trials", trials, "Monte Carlo trials per point");

    auto* fit_cmd = app.add_subcommand("fit-slope", "least-squares slope of a CSV column");
    std::string in_path;
    std::string metric;
    std::string case_label;
    double window = 1.0;
    fit_cmd->add_option("--in", in_path, "input CSV produced by run")->required();
    fit_cmd->add_option("--metric", metric, "metric name to fit")->required();
    fit_cmd->add_option("--case", case_label, "optional case_label filter (worst/best/sim/...)");
    fit_cmd->add_option("--window", window, "fit window in decades of SNR (default 1)");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& name : risnoma::preset_names()) std::cout << name << "\n";
        return 0;
    }

    try {
        if (run_cmd->parsed()) {
            risnoma::ExperimentSpec spec = risnoma::make_preset(preset);
            if (!config_path.empty()) risnoma::apply_config_file(spec, config_path);
            if (seed_set) spec.mc.master_seed = seed;
            if (trials > 0) {
                spec.mc.trials = trials;
                spec.mc.batch_size = std::min(spec.mc.batch_size, trials);
            }
            const auto rows = risnoma::run(spec);
            const std::string path = out_path.empty() ? preset + ".csv" : out_path;
            std::ofstream os(path, std::ios::binary);
            if (!os) {
                std::cerr << "error: cannot open '" << path << "' for writing\n";
                return 1;
            }
            risnoma::write_csv(rows, os);
            std::cout << risnoma::format_summary(rows);
            std::cout << "wrote " << rows.size() << " rows to " << path << "\n";
            return 0;
        }
        if (fit_cmd->parsed()) {
            std::ifstream is(in_path);
            if (!is) {
                std::cerr << "error: cannot open '" << in_path << "'\n";
                return 1;
            }
            const auto rows = risnoma::read_csv(is);
            const double slope = risnoma::fit_slope(rows, metric, case_label, window);
            std::cout << slope << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::cout << app.help();
    return 0;
}
