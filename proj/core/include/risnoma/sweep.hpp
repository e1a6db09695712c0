#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "risnoma/closedform.hpp"
#include "risnoma/montecarlo.hpp"
#include "risnoma/relay.hpp"

namespace risnoma {

enum class SweepAxis { snr_dbm, n_ris, users };

// One curve family within a preset (e.g. a fixed RIS count).
struct Family {
    std::string label;
    NetworkConfig config;
};

// A sweep description: the axis and grid, the metrics to emit, the Monte
// Carlo budget and the scenario parameters.
struct ExperimentSpec {
    std::string preset = "custom";
    SweepAxis axis = SweepAxis::snr_dbm;
    std::vector<double> grid;
    std::vector<std::string> outputs;
    MonteCarloConfig mc;
    NetworkConfig base;
    std::vector<Family> families;  // empty means just the base config
    RelayConfig relay;
    EnergyModel energy;
    double fixed_power_dbm = 30.0;  // transmit power when the axis is not SNR
    ThetaBarPolicy theta_policy = ThetaBarPolicy::averaged();

    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

// One output record. std_error is NaN for deterministic analytic values and
// is emitted as an empty CSV field.
struct SweepRow {
    double axis_value = 0.0;
    std::string metric;
    double value = 0.0;
    double std_error = 0.0;
    std::string case_label;
};

// All metric tokens accepted in ExperimentSpec::outputs.
const std::vector<std::string>& known_outputs();

std::vector<std::string> preset_names();

// Builds the named preset; throws std::invalid_argument for unknown names.
ExperimentSpec make_preset(const std::string& name);

// Applies `key = value` overrides from a flat text file (# comments allowed).
void apply_config_file(ExperimentSpec& spec, const std::string& path);

// Runs the sweep. Rows come out in deterministic (family, output, grid)
// order; SIC-infeasible grid points are skipped with a note on stderr.
std::vector<SweepRow> run(const ExperimentSpec& spec, int threads = 0);

std::string to_csv(const std::vector<SweepRow>& rows);
void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);
std::vector<SweepRow> read_csv(std::istream& is);

// Short human-readable digest of a result table (one line per curve).
std::string format_summary(const std::vector<SweepRow>& rows);

// Least-squares slope over the top `window_decades` of the axis. Metrics
// starting with "op" are fitted as log10(value) against log10(SNR) and the
// positive decay order is returned; other metrics are fitted linearly against
// log2(SNR). Requires at least 4 points in the window.
double fit_slope(const std::vector<SweepRow>& rows, const std::string& metric,
                 const std::string& case_label = "", double window_decades = 1.0);

}  // namespace risnoma
