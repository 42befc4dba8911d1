/*
   Copyright 2026 The asdgic authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asdgic/bounds.hpp"
#include "asdgic/scenario.hpp"
#include "asdgic/sha1.hpp"
#include "asdgic/simulate.hpp"

// Batch front end. Exit codes: 0 success, 1 a stated regime/validity
// condition does not hold, 2 malformed input or usage error. Output is
// byte-identical for identical invocations and seeds.

namespace asdgic::cli {

namespace detail {

// 17 significant digits: enough to round-trip an IEEE double exactly
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            fail(errc::bad_input, "bad number '" + item + "' in list");
        }
    }
    if (out.empty()) fail(errc::bad_input, "empty list");
    return out;
}

inline std::string flags_string(const ChannelParams& p, const RegimeFlags& f) {
    std::ostringstream os;
    os << "strong=" << (p.strong_interference ? 1 : 0)
       << ";imb1=" << (f.imbalanced_dec1 ? 1 : 0) << ";bal1=" << (f.balanced_dec1 ? 1 : 0)
       << ";imb2=" << (f.imbalanced_dec2 ? 1 : 0) << ";bal2=" << (f.balanced_dec2 ? 1 : 0);
    return os.str();
}

inline void emit_gap_rows(const std::vector<GapRow>& rows, const std::string& format,
                          std::ostream& out) {
    if (format == "json") {
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["x"] = r.x;
            j["term_outer"] = r.term_outer;
            j["term_inner_raw"] = r.term_inner_raw;
            j["term_inner_env"] = r.term_inner_env;
            j["gap"] = r.gap;
            out << j.dump() << "\n";
        }
        return;
    }
    out << "x,term_outer,term_inner_raw,term_inner_env,gap\n";
    for (const auto& r : rows)
        out << g17(r.x) << ',' << g17(r.term_outer) << ',' << g17(r.term_inner_raw) << ','
            << g17(r.term_inner_env) << ',' << g17(r.gap) << "\n";
}

struct SimEcho {
    std::string scheme, family, state_mode;
    int decoder = 1, dim = 1, digital_k = 0;
    double lattice_scale = 1.0, state_q1 = 1.0, state_q2 = 1.0;
    std::uint64_t trials = 0, seed = 0;
};

inline std::string sim_config_string(const SimEcho& e, const SimResult& r) {
    std::ostringstream os;
    os << "scheme=" << e.scheme << ";decoder=" << e.decoder << ";family=" << e.family
       << ";dim=" << e.dim << ";lattice_scale=" << g17(e.lattice_scale)
       << ";trials=" << e.trials << ";seed=" << e.seed << ";state_mode=" << e.state_mode
       << ";state_q1=" << g17(e.state_q1) << ";state_q2=" << g17(e.state_q2)
       << ";digital_k=" << e.digital_k << ";alpha1=" << g17(r.alpha1)
       << ";alpha2=" << g17(r.alpha2);
    return os.str();
}

inline void emit_sim_result(const SimEcho& e, const SimResult& r, const std::string& format,
                            std::ostream& out) {
    const std::string hash = asdgic::detail::config_hash(sim_config_string(e, r));
    if (format == "json") {
        nlohmann::ordered_json j;
        j["scheme"] = e.scheme;
        j["decoder"] = e.decoder;
        j["family"] = e.family;
        j["dim"] = e.dim;
        j["lattice_scale"] = e.lattice_scale;
        j["trials"] = e.trials;
        j["seed"] = e.seed;
        j["state_mode"] = e.state_mode;
        j["state_q1"] = e.state_q1;
        j["state_q2"] = e.state_q2;
        j["digital_k"] = e.digital_k;
        j["alpha1"] = r.alpha1;
        j["alpha2"] = r.alpha2;
        j["sigma2_lat1"] = r.sigma2_lat1;
        j["sigma2_lat2"] = r.sigma2_lat2;
        j["x1_power"] = r.x1_power;
        j["x1_power_se"] = r.x1_power_se;
        j["x2_power"] = r.x2_power;
        j["x2_power_se"] = r.x2_power_se;
        j["zeff_premod_var"] = r.zeff_premod_var;
        j["zeff_premod_se"] = r.zeff_premod_se;
        j["zeff_postmod_var"] = r.zeff_postmod_var;
        j["zeff_postmod_se"] = r.zeff_postmod_se;
        j["predicted_premod_var"] = r.predicted_premod_var;
        j["max_align_residual"] = r.max_align_residual;
        j["shaping_loss"] = r.shaping_loss;
        if (r.ser) j["ser"] = *r.ser; else j["ser"] = nullptr;
        j["ser_se"] = r.ser_se;
        j["config_hash"] = hash;
        out << j.dump() << "\n";
        return;
    }
    out << "scheme,decoder,family,dim,lattice_scale,trials,seed,state_mode,state_q1,"
           "state_q2,digital_k,alpha1,alpha2,sigma2_lat1,sigma2_lat2,x1_power,x1_power_se,"
           "x2_power,x2_power_se,zeff_premod_var,zeff_premod_se,zeff_postmod_var,"
           "zeff_postmod_se,predicted_premod_var,max_align_residual,shaping_loss,ser,"
           "ser_se,config_hash\n";
    out << e.scheme << ',' << e.decoder << ',' << e.family << ',' << e.dim << ','
        << g17(e.lattice_scale) << ',' << e.trials << ',' << e.seed << ',' << e.state_mode
        << ',' << g17(e.state_q1) << ',' << g17(e.state_q2) << ',' << e.digital_k << ','
        << g17(r.alpha1) << ',' << g17(r.alpha2) << ',' << g17(r.sigma2_lat1) << ','
        << g17(r.sigma2_lat2) << ',' << g17(r.x1_power) << ',' << g17(r.x1_power_se) << ','
        << g17(r.x2_power) << ',' << g17(r.x2_power_se) << ',' << g17(r.zeff_premod_var)
        << ',' << g17(r.zeff_premod_se) << ',' << g17(r.zeff_postmod_var) << ','
        << g17(r.zeff_postmod_se) << ',' << g17(r.predicted_premod_var) << ','
        << g17(r.max_align_residual) << ',' << g17(r.shaping_loss) << ','
        << (r.ser ? g17(*r.ser) : std::string()) << ',' << g17(r.ser_se) << ',' << hash
        << "\n";
}

} // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"rate bounds and lattice-scheme simulation for the state-dependent "
                 "Gaussian interference channel"};
    app.require_subcommand(1);

    // shared envelope knobs
    int env_density = 257;
    double env_boost = 100.0;

    std::string scenario_path, format_flag, scheme_str = "thm2-corner-R2", family_str;
    std::string snr_list, q_list, alpha_str;
    int dim = 1, decoder = 1, digital_k = 0, workers = 1, steps = 200;
    std::uint64_t trials = 10000, seed = 1;
    double xmin = 0.05, xmax = 50.0, lattice_scale_flag = 0.0;
    bool sweep_alpha_flag = false;

    auto add_env_flags = [&](CLI::App* c) {
        c->add_option("--env-density", env_density, "power-grid points per axis");
        c->add_option("--env-boost", env_boost, "max power boost factor");
    };

    auto* regions = app.add_subcommand("regions", "outer and achievable sum-rate bounds");
    regions->add_option("scenario", scenario_path, "scenario file")->required();
    add_env_flags(regions);

    auto* gap_table = app.add_subcommand("gap-table", "inner/outer gap at listed SNRs");
    gap_table->add_option("--snrs", snr_list, "comma-separated SNR list")->required();
    gap_table->add_option("--format", format_flag, "csv or json");
    add_env_flags(gap_table);

    auto* gap_curve = app.add_subcommand("gap-curve", "gap on a log grid of SNRs");
    gap_curve->add_option("--xmin", xmin, "lowest SNR");
    gap_curve->add_option("--xmax", xmax, "highest SNR");
    gap_curve->add_option("--steps", steps, "number of grid points");
    gap_curve->add_option("--format", format_flag, "csv or json");
    add_env_flags(gap_curve);

    auto* simulate = app.add_subcommand("simulate", "run a transceiver chain");
    simulate->add_option("scenario", scenario_path, "scenario file")->required();
    simulate->add_option("--scheme", scheme_str, "transmission scheme")->required();
    simulate->add_option("--decoder", decoder, "receiving decoder (1 or 2)");
    simulate->add_option("--dim", dim, "lattice dimension");
    simulate->add_option("--family", family_str, "lattice family override");
    simulate->add_option("--lattice-scale", lattice_scale_flag, "scale override");
    simulate->add_option("--trials", trials, "Monte-Carlo trials");
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--digital", digital_k, "nested-coset mode, k bits per dimension");
    simulate->add_flag("--sweep-alpha", sweep_alpha_flag, "sweep the receiver coefficient");
    simulate->add_option("--alpha", alpha_str, "explicit coefficient(s) a or a1,a2");
    simulate->add_option("--workers", workers, "worker threads");

    auto* binning = app.add_subcommand("binning", "random-binning sum-rate bound sweep");
    binning->add_option("scenario", scenario_path, "scenario file")->required();
    binning->add_option("--q-list", q_list, "comma-separated equal state variances")->required();

    auto* validate = app.add_subcommand("validate", "check a scenario and echo its flags");
    validate->add_option("scenario", scenario_path, "scenario file")->required();

    std::vector<const char*> argv;
    argv.push_back("asdgic");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const EnvelopeOptions env{env_density, env_boost};

        if (regions->parsed()) {
            const Scenario sc = load_scenario_file(scenario_path);
            const ChannelParams p = sc.params();
            const SumRateBound outer = outer_sum_rate(p);
            const SumRateBound ach = achievable_sum_rate(p, env);
            const std::string flags = detail::flags_string(p, ach.conditions);
            if (sc.format == "json") {
                nlohmann::ordered_json j;
                j["outer_bits"] = outer.value;
                j["achievable_bits"] = ach.value;
                j["kind"] = bound_kind_name(ach.kind);
                j["limiting_decoder"] = ach.limiting_decoder;
                j["flags"] = flags;
                j["warnings"] = ach.warnings;
                out << j.dump() << "\n";
            } else {
                out << "outer_bits,achievable_bits,kind,limiting_decoder,flags\n";
                out << detail::g17(outer.value) << ',' << detail::g17(ach.value) << ','
                    << bound_kind_name(ach.kind) << ',' << ach.limiting_decoder << ','
                    << flags << "\n";
            }
            return 0;
        }

        if (gap_table->parsed() || gap_curve->parsed()) {
            const std::string format = format_flag.empty() ? "csv" : format_flag;
            if (format != "csv" && format != "json")
                fail(errc::bad_input, "format must be csv or json");
            std::vector<GapRow> rows;
            if (gap_table->parsed()) {
                for (double x : detail::parse_double_list(snr_list))
                    rows.push_back(gap_tilde(x, env));
            } else {
                if (!(xmin > 0.0) || !(xmax > xmin)) fail(errc::bad_input, "need 0 < xmin < xmax");
                if (steps < 2) fail(errc::bad_input, "need steps >= 2");
                for (int i = 0; i < steps; ++i) {
                    const double x = xmin * std::pow(xmax / xmin,
                                                     static_cast<double>(i) / (steps - 1));
                    rows.push_back(gap_tilde(x, env));
                }
            }
            detail::emit_gap_rows(rows, format, out);
            return 0;
        }

        if (simulate->parsed()) {
            const Scenario sc = load_scenario_file(scenario_path);
            const ChannelParams p = sc.params();

            SchemeSpec spec;
            spec.scheme = parse_scheme(scheme_str);
            spec.decoder = decoder;
            spec.family = parse_family(family_str.empty() ? sc.lattice_family : family_str);
            spec.dim = dim;
            spec.lattice_scale = lattice_scale_flag > 0.0 ? lattice_scale_flag : sc.lattice_scale;
            spec.trials = trials;
            spec.seed = seed;
            apply_state_settings(sc, spec);
            if (!alpha_str.empty()) {
                const auto a = detail::parse_double_list(alpha_str);
                if (a.size() == 1) spec.alpha_override = std::make_pair(a[0], a[0]);
                else if (a.size() == 2) spec.alpha_override = std::make_pair(a[0], a[1]);
                else fail(errc::bad_input, "--alpha takes one or two values");
            }

            if (sweep_alpha_flag && digital_k > 0)
                fail(errc::bad_input, "--sweep-alpha and --digital are exclusive");

            if (sweep_alpha_flag) {
                std::vector<double> grid;
                for (int i = 1; i <= 101; ++i) grid.push_back(i * 0.01);
                const AlphaSweepResult sw = sweep_alpha(p, spec, grid, workers);
                if (sc.format == "json") {
                    for (std::size_t i = 0; i < sw.grid.size(); ++i) {
                        nlohmann::ordered_json j;
                        j["alpha"] = sw.grid[i];
                        j["zeff_premod_var"] = sw.premod_var[i];
                        j["is_argmin"] = (i == sw.argmin);
                        out << j.dump() << "\n";
                    }
                } else {
                    out << "alpha,zeff_premod_var,is_argmin\n";
                    for (std::size_t i = 0; i < sw.grid.size(); ++i)
                        out << detail::g17(sw.grid[i]) << ',' << detail::g17(sw.premod_var[i])
                            << ',' << (i == sw.argmin ? 1 : 0) << "\n";
                }
                return 0;
            }

            const SimResult r = (digital_k > 0) ? run_digital(p, spec, digital_k, workers)
                                                : run_analog(p, spec, workers);
            detail::SimEcho echo;
            echo.scheme = scheme_name(spec.scheme);
            echo.decoder = spec.decoder;
            echo.family = family_name(spec.family);
            echo.dim = spec.dim;
            echo.lattice_scale = spec.lattice_scale;
            echo.trials = spec.trials;
            echo.seed = spec.seed;
            echo.state_mode = state_mode_name(spec.state_mode);
            echo.state_q1 = spec.state_q1;
            echo.state_q2 = spec.state_q2;
            echo.digital_k = digital_k;
            detail::emit_sim_result(echo, r, sc.format, out);
            return 0;
        }

        if (binning->parsed()) {
            const Scenario sc = load_scenario_file(scenario_path);
            const ChannelParams p = sc.params();
            const auto qs = detail::parse_double_list(q_list);
            if (sc.format == "json") {
                for (double q : qs) {
                    const BinningBound b = binning_sum_rate_bound(p, q, q);
                    nlohmann::ordered_json j;
                    j["q"] = q;
                    j["entropy_term"] = b.entropy_term;
                    j["gamma"] = b.gamma;
                    j["value"] = b.value;
                    out << j.dump() << "\n";
                }
            } else {
                out << "q,entropy_term,gamma,value\n";
                for (double q : qs) {
                    const BinningBound b = binning_sum_rate_bound(p, q, q);
                    out << detail::g17(q) << ',' << detail::g17(b.entropy_term) << ','
                        << detail::g17(b.gamma) << ',' << detail::g17(b.value) << "\n";
                }
            }
            return 0;
        }

        if (validate->parsed()) {
            const Scenario sc = load_scenario_file(scenario_path);
            const ChannelParams p = sc.params();
            const RegimeFlags f = classify_regime(p);
            out << "valid=true\n";
            out << "strong_interference=" << (p.strong_interference ? "true" : "false") << "\n";
            out << "imbalanced_dec1=" << (f.imbalanced_dec1 ? "true" : "false") << "\n";
            out << "balanced_dec1=" << (f.balanced_dec1 ? "true" : "false") << "\n";
            out << "imbalanced_dec2=" << (f.imbalanced_dec2 ? "true" : "false") << "\n";
            out << "balanced_dec2=" << (f.balanced_dec2 ? "true" : "false") << "\n";
            out << "scenario=" << scenario_to_json(sc);
            return 0;
        }
    } catch (const error& e) {
        err << e.what() << "\n";
        return (e.code() == errc::condition_not_met || e.code() == errc::no_applicable_regime)
                   ? 1
                   : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace asdgic::cli
