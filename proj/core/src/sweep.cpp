#include "risnoma/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace risnoma {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> arange(double lo, double hi, double step) {
    std::vector<double> g;
    for (double v = lo; v <= hi + 1e-9; v += step) g.push_back(v);
    return g;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: expected boolean, got '" + v + "'");
}

// Evaluation context for one (family, grid point) pair, with lazy caching of
// the Monte Carlo estimates shared between metrics.
struct PointEval {
    const ExperimentSpec& spec;
    NetworkConfig cfg;
    double p_dbm;
    int threads;

    double p_mw() const { return cfg.tx_power_mw(p_dbm); }
    double sigma2() const { return cfg.noise_mw(); }
    double p_watts() const { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

    std::optional<EstimateWithCI> rate_w_sim_{}, rate_v_sim_{}, oma_w_{}, oma_v_{};

    const EstimateWithCI& rate_w_sim() {
        if (!rate_w_sim_) rate_w_sim_ = simulate_rate_w(cfg, spec.mc, p_mw(), sigma2(), threads);
        return *rate_w_sim_;
    }
    const EstimateWithCI& rate_v_sim() {
        if (!rate_v_sim_) rate_v_sim_ = simulate_rate_v(cfg, spec.mc, p_mw(), sigma2(), threads);
        return *rate_v_sim_;
    }
    const EstimateWithCI& oma(GainUser u) {
        auto& slot = (u == GainUser::w) ? oma_w_ : oma_v_;
        if (!slot) slot = simulate_oma(cfg, spec.mc, p_mw(), sigma2(), u, threads);
        return *slot;
    }
};

}  // namespace

void ExperimentSpec::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("ExperimentSpec: " + what); };
    if (grid.empty()) fail("grid must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) fail("grid must be strictly increasing");
    if (outputs.empty()) fail("outputs must not be empty");
    const auto& known = known_outputs();
    for (const auto& o : outputs) {
        if (std::find(known.begin(), known.end(), o) == known.end())
            fail("unknown output '" + o + "'");
        if ((o == "diversity_fit" || o == "slope_fit") && axis != SweepAxis::snr_dbm)
            fail("'" + o + "' requires the snr_dbm axis");
    }
    if (axis != SweepAxis::snr_dbm)
        for (double g : grid)
            if (g < 0 || g != std::floor(g)) fail("n_ris/users grid values must be nonnegative integers");
    base.validate();
    for (const auto& f : families) f.config.validate();
    if (mc.trials < 1) fail("trials must be >= 1");
    if (mc.batch_size < 1 || mc.batch_size > mc.trials) fail("batch_size must be in [1, trials]");
}

const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> tokens = {
        "op_worst",     "op_best",     "op_asym",   "op_sim",     "rate_W_worst",
        "rate_W_best",  "rate_W_sim",  "rate_v",    "rate_v_sim", "oma",
        "se",           "ee",          "fd_relay",  "hd_relay",   "diversity_fit",
        "slope_fit"};
    return tokens;
}

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5a", "fig5b", "fig6", "fig7", "fig8", "fig9", "custom"};
}

ExperimentSpec make_preset(const std::string& name) {
    ExperimentSpec spec;
    spec.preset = name;
    NetworkConfig baseline;  // defaults carry the reference scenario

    auto family = [&](const std::string& label, auto&& mutate) {
        NetworkConfig cfg = baseline;
        mutate(cfg);
        spec.families.push_back({label, cfg});
    };

    if (name == "fig2") {
        spec.grid = arange(-10, 35, 5);
        spec.outputs = {"op_worst", "op_best", "op_asym", "op_sim"};
        for (int n : {1, 2, 3})
            family("N" + std::to_string(n), [n](NetworkConfig& c) { c.n_ris = n; });
    } else if (name == "fig3") {
        spec.grid = arange(-10, 35, 5);
        spec.outputs = {"op_worst", "op_best", "op_sim"};
        for (int m : {1, 2, 3})
            family("m" + std::to_string(m), [m](NetworkConfig& c) {
                c.n_ris = 3;
                c.m1 = c.m_w = c.m_v = m;
            });
    } else if (name == "fig4") {
        spec.grid = arange(-10, 35, 5);
        spec.outputs = {"op_worst", "op_best", "op_asym", "op_sim"};
        for (int w : {2, 3, 4})
            family("W" + std::to_string(w), [w](NetworkConfig& c) {
                c.n_ris = 3;
                c.alpha_l = c.alpha_n = 3.0;
                c.n_users = w;
                c.v_index = w - 1;
            });
    } else if (name == "fig5a") {
        spec.grid = arange(0, 40, 4);
        spec.outputs = {"rate_W_worst", "rate_W_best", "rate_W_sim"};
        family("N3m1", [](NetworkConfig& c) { c.n_ris = 3; });
        family("N5m1", [](NetworkConfig& c) { c.n_ris = 5; });
        family("N3m3", [](NetworkConfig& c) {
            c.n_ris = 3;
            c.m1 = c.m_w = c.m_v = 3;
        });
        family("N0", [](NetworkConfig& c) { c.n_ris = 0; });
    } else if (name == "fig5b") {
        spec.grid = arange(0, 40, 4);
        spec.outputs = {"rate_v", "rate_v_sim"};
        for (int n : {3, 5})
            family("N" + std::to_string(n), [n](NetworkConfig& c) { c.n_ris = n; });
    } else if (name == "fig6") {
        spec.grid = arange(0, 40, 5);
        spec.outputs = {"se", "oma", "rate_W_sim", "rate_v_sim"};
        for (int n : {4, 8})
            family("N" + std::to_string(n), [n](NetworkConfig& c) {
                c.n_ris = n;
                c.m1 = c.m_w = c.m_v = 3;
            });
    } else if (name == "fig7") {
        spec.axis = SweepAxis::n_ris;
        spec.grid = arange(2, 30, 2);
        spec.fixed_power_dbm = 0.0;
        spec.outputs = {"se", "fd_relay", "hd_relay"};
        spec.base.m1 = spec.base.m_w = spec.base.m_v = 3;
        spec.base.alpha_l = 2.5;
        spec.base.direct_link = false;
    } else if (name == "fig8") {
        spec.grid = arange(0, 40, 5);
        spec.outputs = {"se"};
        for (int n : {4, 8, 16})
            family("N" + std::to_string(n), [n](NetworkConfig& c) {
                c.n_ris = n;
                c.m1 = c.m_w = c.m_v = 3;
            });
    } else if (name == "fig9") {
        spec.axis = SweepAxis::n_ris;
        spec.grid = arange(2, 40, 2);
        spec.fixed_power_dbm = 30.0;
        spec.outputs = {"se", "ee"};
    } else if (name == "custom") {
        // axis, grid and outputs come from the config file
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return spec;
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");

    auto apply_to_configs = [&spec](auto&& setter) {
        setter(spec.base);
        for (auto& f : spec.families) setter(f.config);
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        auto num = [&value] { return std::stod(value); };
        if (key == "trials") spec.mc.trials = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "seed") spec.mc.master_seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "batch_size") spec.mc.batch_size = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "axis") {
            if (value == "snr_dbm") spec.axis = SweepAxis::snr_dbm;
            else if (value == "n_ris") spec.axis = SweepAxis::n_ris;
            else if (value == "users") spec.axis = SweepAxis::users;
            else throw std::invalid_argument("config: unknown axis '" + value + "'");
        } else if (key == "grid") {
            spec.grid.clear();
            for (const auto& tok : split(value, ',')) spec.grid.push_back(std::stod(tok));
        } else if (key == "outputs") {
            spec.outputs = split(value, ',');
        } else if (key == "power_dbm") spec.fixed_power_dbm = num();
        else if (key == "theta_bar_policy") {
            if (value == "average") spec.theta_policy = ThetaBarPolicy::averaged();
            else if (value == "fixed") spec.theta_policy.average = false;
            else throw std::invalid_argument("config: unknown theta_bar_policy '" + value + "'");
        } else if (key == "theta_bar") spec.theta_policy = ThetaBarPolicy::fixed(num());
        else if (key == "eps_h") spec.relay.eps_h = num();
        else if (key == "relay_offset_db") spec.relay.relay_power_offset_db = num();
        else if (key == "m_relay") spec.relay.m_relay = num();
        else if (key == "p_bs_static_w") spec.energy.p_bs_static_w = num();
        else if (key == "eps_b") spec.energy.eps_b = num();
        else if (key == "p_user_w") spec.energy.p_user_w = num();
        else if (key == "p_ris_ctrl_w") spec.energy.p_ris_ctrl_w = num();
        else if (key == "n_ris") apply_to_configs([v = static_cast<int>(num())](NetworkConfig& c) { c.n_ris = v; });
        else if (key == "n_users") apply_to_configs([v = static_cast<int>(num())](NetworkConfig& c) { c.n_users = v; });
        else if (key == "v_index") apply_to_configs([v = static_cast<int>(num())](NetworkConfig& c) { c.v_index = v; });
        else if (key == "m1") apply_to_configs([v = num()](NetworkConfig& c) { c.m1 = v; });
        else if (key == "m_w") apply_to_configs([v = num()](NetworkConfig& c) { c.m_w = v; });
        else if (key == "m_v") apply_to_configs([v = num()](NetworkConfig& c) { c.m_v = v; });
        else if (key == "d1") apply_to_configs([v = num()](NetworkConfig& c) { c.d1 = v; });
        else if (key == "d2_w") apply_to_configs([v = num()](NetworkConfig& c) { c.d2_w = v; });
        else if (key == "d2_v") apply_to_configs([v = num()](NetworkConfig& c) { c.d2_v = v; });
        else if (key == "d3_w") apply_to_configs([v = num()](NetworkConfig& c) { c.d3_w = v; });
        else if (key == "d3_v") apply_to_configs([v = num()](NetworkConfig& c) { c.d3_v = v; });
        else if (key == "alpha_l") apply_to_configs([v = num()](NetworkConfig& c) { c.alpha_l = v; });
        else if (key == "alpha_n") apply_to_configs([v = num()](NetworkConfig& c) { c.alpha_n = v; });
        else if (key == "a_v_sq") apply_to_configs([v = num()](NetworkConfig& c) { c.a_v_sq = v; });
        else if (key == "a_w_sq") apply_to_configs([v = num()](NetworkConfig& c) { c.a_w_sq = v; });
        else if (key == "rate_w") apply_to_configs([v = num()](NetworkConfig& c) { c.rate_w = v; });
        else if (key == "rate_v") apply_to_configs([v = num()](NetworkConfig& c) { c.rate_v = v; });
        else if (key == "ref_loss_db") apply_to_configs([v = num()](NetworkConfig& c) { c.ref_loss_db = v; });
        else if (key == "bandwidth_hz") apply_to_configs([v = num()](NetworkConfig& c) { c.bandwidth_hz = v; });
        else if (key == "noise_dbm") apply_to_configs([v = num()](NetworkConfig& c) { c.noise_dbm = v; });
        else if (key == "direct_link") apply_to_configs([v = parse_bool(value)](NetworkConfig& c) { c.direct_link = v; });
        else if (key == "coherent_direct") apply_to_configs([v = parse_bool(value)](NetworkConfig& c) { c.coherent_direct = v; });
        else if (key == "aligned_pair") apply_to_configs([v = parse_bool(value)](NetworkConfig& c) { c.aligned_pair = v; });
        else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    // the default batch hint tracks reduced trial counts
    spec.mc.batch_size = std::min(spec.mc.batch_size, spec.mc.trials);
}

namespace {

void emit_point(PointEval& pt, const std::string& token, const std::string& suffix,
                double axis_value, std::vector<SweepRow>& rows) {
    auto push = [&](const std::string& case_label, double value, double se = kNan) {
        rows.push_back({axis_value, token + suffix, value, se, case_label});
    };
    const double p = pt.p_mw();
    const double s2 = pt.sigma2();

    if (token == "op_worst" || token == "op_best" || token == "op_asym") {
        const auto thr = outage_thresholds(pt.cfg, p, s2);
        if (token == "op_asym") {
            for (GainCase gc : {GainCase::worst, GainCase::best}) {
                const auto approx = moment_match(pt.cfg, gc);
                const auto asym = outage_prob_asymptotic(approx, thr, pt.cfg.n_users);
                push(gc == GainCase::worst ? "worst" : "best", asym.value);
            }
        } else {
            const GainCase gc = (token == "op_worst") ? GainCase::worst : GainCase::best;
            const auto approx = moment_match(pt.cfg, gc);
            push(gc == GainCase::worst ? "worst" : "best",
                 outage_prob(approx, thr, pt.cfg.n_users));
        }
    } else if (token == "op_sim") {
        const auto est = simulate_outage_w(pt.cfg, pt.spec.mc, p, s2, pt.threads);
        push("sim", est.mean, est.std_error);
    } else if (token == "rate_W_worst" || token == "rate_W_best") {
        const GainCase gc = (token == "rate_W_worst") ? GainCase::worst : GainCase::best;
        push(gc == GainCase::worst ? "worst" : "best",
             ergodic_rate_w_quad(moment_match(pt.cfg, gc), pt.cfg, p, s2));
    } else if (token == "rate_W_sim") {
        const auto est = pt.rate_w_sim();
        push("sim", est.mean, est.std_error);
    } else if (token == "rate_v") {
        for (GainCase gc : {GainCase::worst, GainCase::best}) {
            const auto approx = moment_match(pt.cfg, gc, GainUser::v);
            push(gc == GainCase::worst ? "worst" : "best",
                 ergodic_rate_v(approx, pt.cfg, p, s2, pt.spec.theta_policy));
        }
    } else if (token == "rate_v_sim") {
        const auto est = pt.rate_v_sim();
        push("sim", est.mean, est.std_error);
    } else if (token == "oma") {
        const auto w = pt.oma(GainUser::w);
        const auto v = pt.oma(GainUser::v);
        push("W", w.mean, w.std_error);
        push("v", v.mean, v.std_error);
    } else if (token == "se") {
        const auto rw = pt.rate_w_sim();
        const auto rv = pt.rate_v_sim();
        push("noma", spectral_efficiency(rv.mean, rw.mean), std::hypot(rw.std_error, rv.std_error));
        const auto ow = pt.oma(GainUser::w);
        const auto ov = pt.oma(GainUser::v);
        push("oma", spectral_efficiency(ov.mean, ow.mean), std::hypot(ow.std_error, ov.std_error));
    } else if (token == "ee") {
        const double rw = ergodic_rate_w_quad(moment_match(pt.cfg, GainCase::worst), pt.cfg, p, s2);
        const double rv = ergodic_rate_v(moment_match(pt.cfg, GainCase::worst, GainUser::v), pt.cfg,
                                         p, s2, pt.spec.theta_policy);
        const double pe = energy_total(pt.spec.energy, pt.p_watts(), pt.cfg.n_ris);
        push("worst", energy_efficiency(spectral_efficiency(rv, rw), pe));
    } else if (token == "fd_relay") {
        const auto est = fd_relay_throughput(pt.cfg, pt.spec.relay, pt.spec.mc, p, s2, pt.threads);
        push("sim", est.mean, est.std_error);
    } else if (token == "hd_relay") {
        const auto est = hd_relay_throughput(pt.cfg, pt.spec.relay, pt.spec.mc, p, s2, pt.threads);
        push("sim", est.mean, est.std_error);
    }
}

}  // namespace

std::vector<SweepRow> run(const ExperimentSpec& spec, int threads) {
    spec.validate();
    const int n_threads = resolve_thread_count(threads);
    std::vector<SweepRow> rows;

    std::vector<Family> families = spec.families;
    if (families.empty()) families.push_back({"", spec.base});
    const bool suffixed = families.size() > 1;

    for (const auto& fam : families) {
        const std::string suffix = (suffixed && !fam.label.empty()) ? "_" + fam.label : "";
        for (const auto& token : spec.outputs) {
            if (token == "diversity_fit" || token == "slope_fit") continue;  // post-pass
            for (double g : spec.grid) {
                PointEval pt{spec, fam.config, spec.fixed_power_dbm, n_threads};
                if (spec.axis == SweepAxis::snr_dbm) {
                    pt.p_dbm = g;
                } else if (spec.axis == SweepAxis::n_ris) {
                    pt.cfg.n_ris = static_cast<int>(g);
                } else {
                    pt.cfg.n_users = static_cast<int>(g);
                    pt.cfg.v_index = pt.cfg.n_users - 1;
                }
                try {
                    emit_point(pt, token, suffix, g, rows);
                } catch (const std::domain_error& e) {
                    std::cerr << "[risnoma] skipping " << token << suffix << " at axis=" << g
                              << ": " << e.what() << "\n";
                }
            }
        }
        // slope fits over the curves just produced
        for (const auto& token : spec.outputs) {
            if (token == "diversity_fit") {
                std::vector<SweepRow> base;
                for (double g : spec.grid) {
                    PointEval pt{spec, fam.config, spec.fixed_power_dbm, n_threads};
                    if (spec.axis == SweepAxis::snr_dbm) pt.p_dbm = g;
                    emit_point(pt, "op_worst", "", g, base);
                }
                rows.push_back({spec.grid.back(), "diversity_fit" + suffix,
                                fit_slope(base, "op_worst", "worst"), kNan, "worst"});
            } else if (token == "slope_fit") {
                std::vector<SweepRow> base;
                for (double g : spec.grid) {
                    PointEval pt{spec, fam.config, spec.fixed_power_dbm, n_threads};
                    if (spec.axis == SweepAxis::snr_dbm) pt.p_dbm = g;
                    emit_point(pt, "rate_W_worst", "", g, base);
                }
                rows.push_back({spec.grid.back(), "slope_fit" + suffix,
                                fit_slope(base, "rate_W_worst", "worst"), kNan, "worst"});
            }
        }
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "axis_value,metric,value,std_error,case_label\n";
    for (const auto& r : rows) {
        out += format_double(r.axis_value);
        out += ',';
        out += r.metric;
        out += ',';
        out += format_double(r.value);
        out += ',';
        if (!std::isnan(r.std_error)) out += format_double(r.std_error);
        out += ',';
        out += r.case_label;
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) { os << to_csv(rows); }

std::vector<SweepRow> read_csv(std::istream& is) {
    std::vector<SweepRow> rows;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("read_csv: empty input");
    if (trim(line) != "axis_value,metric,value,std_error,case_label")
        throw std::invalid_argument("read_csv: unexpected header");
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        f.push_back(cur);
        if (f.size() != 5) throw std::invalid_argument("read_csv: malformed row '" + line + "'");
        SweepRow r;
        r.axis_value = std::stod(f[0]);
        r.metric = f[1];
        r.value = std::stod(f[2]);
        r.std_error = f[3].empty() ? kNan : std::stod(f[3]);
        r.case_label = trim(f[4]);
        rows.push_back(r);
    }
    return rows;
}

std::string format_summary(const std::vector<SweepRow>& rows) {
    // preserve first-appearance order of (metric, case) pairs
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::vector<const SweepRow*>> curves;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.metric, r.case_label);
        if (!curves.count(key)) order.push_back(key);
        curves[key].push_back(&r);
    }
    std::ostringstream os;
    os << "curve (case)                        points      first        last\n";
    for (const auto& key : order) {
        const auto& pts = curves[key];
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-28s %-6s %7zu %11.5g %11.5g\n", key.first.c_str(),
                      key.second.c_str(), pts.size(), pts.front()->value, pts.back()->value);
        os << buf;
    }
    return os.str();
}

double fit_slope(const std::vector<SweepRow>& rows, const std::string& metric,
                 const std::string& case_label, double window_decades) {
    const bool log_metric = metric.rfind("op", 0) == 0;
    std::vector<std::pair<double, double>> pts;  // (x, y)
    for (const auto& r : rows) {
        if (r.metric != metric) continue;
        if (!case_label.empty() && r.case_label != case_label) continue;
        if (log_metric && !(r.value > 0.0)) continue;
        // axis is transmit power in dBm; SNR is proportional to it, so slopes
        // against log10(SNR) or log2(SNR) only need the unit conversion
        const double x = log_metric ? r.axis_value / 10.0
                                    : r.axis_value / 10.0 * 3.3219280948873623;
        const double y = log_metric ? std::log10(r.value) : r.value;
        pts.emplace_back(x, y);
    }
    if (pts.size() < 4) throw std::invalid_argument("fit_slope: fewer than 4 usable points");
    double x_max = pts.front().first;
    for (const auto& p : pts) x_max = std::max(x_max, p.first);
    const double span = log_metric ? window_decades : window_decades * 3.3219280948873623;
    std::vector<std::pair<double, double>> win;
    for (const auto& p : pts)
        if (p.first >= x_max - span - 1e-12) win.push_back(p);
    if (win.size() < 4) throw std::invalid_argument("fit_slope: fewer than 4 points in the fit window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : win) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(win.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return log_metric ? -slope : slope;
}

}  // namespace risnoma
