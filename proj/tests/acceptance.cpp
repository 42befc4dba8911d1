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

// End-to-end acceptance suite. Each numbered check prints one PASS/FAIL line;
// the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "asdgic/cli.hpp"
#include "asdgic/simulate.hpp"
#include "support/oracles.hpp"

using namespace asdgic;

namespace {

int g_failures = 0;

void report(int num, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s  %2d. %s%s%s\n", pass ? "PASS" : "FAIL", num, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. gap table against the reference values, within 0.01 bit, under 1 s
void check_gap_table() {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out, err;
    const int code =
        cli::run_command({"gap-table", "--snrs", "0.1,0.5,1,10,20"}, out, err);
    const double dt = seconds_since(t0);

    bool ok = (code == 0) && dt < 1.0;
    std::string detail = "runtime " + fmt(dt) + "s";
    const double want[5] = {1.79, 0.938, 0.661, 0.1257, 0.0673};
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);  // header
    for (int i = 0; i < 5; ++i) {
        if (!std::getline(in, line)) {
            ok = false;
            break;
        }
        const double gap = std::stod(line.substr(line.rfind(',') + 1));
        detail += " gap(" + fmt(want[i]) + ")=" + fmt(gap);
        if (std::fabs(gap - want[i]) > 0.01) ok = false;
    }
    report(1, "gap table at SNR {0.1,0.5,1,10,20} within 0.01 bit, < 1 s", ok, detail);
}

// 2. gap curve strictly decreasing on a 200-point log grid, < 0.67 for x >= 1
void check_gap_monotone() {
    const auto t0 = std::chrono::steady_clock::now();
    bool decreasing = true, under_067 = true;
    double prev = 1e18;
    for (int i = 0; i < 200; ++i) {
        const double x = 0.05 * std::pow(50.0 / 0.05, i / 199.0);
        const GapRow row = gap_tilde(x);
        if (!(row.gap < prev)) decreasing = false;
        prev = row.gap;
        if (x >= 1.0 && !(row.gap < 0.67)) under_067 = false;
    }
    const double dt = seconds_since(t0);
    report(2, "gap strictly decreasing over [0.05,50]; < 0.67 bit for x >= 1",
           decreasing && under_067 && dt < 1.0, "runtime " + fmt(dt) + "s");
}

// 3. capacity branch equals the outer branch on the imbalanced boundary
void check_boundary_tightness() {
    TrialRng rng(0xB07DA12, 0);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a12 = 0.2 + 4.0 * rng.uniform01();
        const double p2 = 0.2 + 4.0 * rng.uniform01();
        const double cross = a12 * p2;
        const double p1 = cross * std::pow(1.1 + 4.0 * rng.uniform01(), 2);
        const double n1 = std::sqrt(cross * p1) - cross;
        const auto p = build_params(p1, p2, n1, 1.0, a12, 1.0);
        const double cap = imbalanced_sum_rate(p, 1).value;
        const double outer = half_log2(1.0 + cross / n1);
        const double rel = std::fabs(cap - outer) / std::max(1.0, std::fabs(outer));
        worst = std::max(worst, rel);
        if (rel > 1e-12) ok = false;
    }
    report(3, "imbalanced boundary: capacity == outer branch to 1e-12", ok,
           "worst rel err " + fmt(worst));
}

// 4. achievable <= outer + 1e-12 over 1e4 random valid draws
void check_dominance() {
    TrialRng rng(0xD0417A9CE, 0);
    const EnvelopeOptions env{33, 100.0};
    bool ok = true;
    int accepted = 0;
    double worst = -1e18;
    while (accepted < 10000) {
        const double p1 = std::exp(2.0 * (2.0 * rng.uniform01() - 1.0));
        const double p2 = std::exp(2.0 * (2.0 * rng.uniform01() - 1.0));
        const double a12 = 0.2 + 5.0 * rng.uniform01();
        const double a21 = 0.2 + 5.0 * rng.uniform01();
        const double n1 = 0.05 + 5.0 * rng.uniform01();
        const double n2 = 0.05 + 5.0 * rng.uniform01();
        const auto p = build_params(p1, p2, n1, n2, a12, a21);
        const auto f = classify_regime(p);
        if (!(f.imbalanced_dec1 || f.balanced_dec1)) continue;
        if (!(f.imbalanced_dec2 || f.balanced_dec2)) continue;
        ++accepted;
        const double margin = achievable_sum_rate(p, env).value - outer_sum_rate(p).value;
        worst = std::max(worst, margin);
        if (margin > 1e-12) ok = false;
    }
    report(4, "dominance: achievable <= outer + 1e-12 on 1e4 draws", ok,
           "worst margin " + fmt(worst));
}

// 5. alignment identities for all five schemes, dims {1,2,4}, 1e4 trials each
void check_alignment() {
    const auto t0 = std::chrono::steady_clock::now();
    const ChannelParams p = build_params(2.0, 1.0, 0.5, 0.8, 1.5, 1.2);
    const SchemeKind schemes[] = {
        SchemeKind::thm2_corner_r2, SchemeKind::thm2_corner_r1, SchemeKind::thm3_corner_r2,
        SchemeKind::thm3_corner_r1_appendix2, SchemeKind::thm3_corner_r1_appendix2_v2};
    bool ok = true;
    double worst = 0.0;
    for (SchemeKind k : schemes) {
        for (int dim : {1, 2, 4}) {
            SchemeSpec s;
            s.scheme = k;
            s.dim = dim;
            s.trials = 10000;
            s.seed = 2718;
            s.state_mode = StateMode::gaussian;
            s.state_q1 = s.state_q2 = 9.0;
            const SimResult r = run_analog(p, s, 2);
            worst = std::max(worst, r.max_align_residual);
            if (r.max_align_residual > 1e-9) ok = false;
        }
    }
    const double dt = seconds_since(t0);
    report(5, "alignment identities, 5 schemes x dims {1,2,4} x 1e4 trials, < 30 s",
           ok && dt < 30.0, "worst residual " + fmt(worst) + ", runtime " + fmt(dt) + "s");
}

// 6. effective-noise closed forms at 1e5 trials
void check_effective_noise() {
    bool ok = true;
    std::string detail;

    {  // single coefficient, alpha = 1/2, predicted 0.5
        const ChannelParams p = build_params(16.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        SchemeSpec s;
        s.scheme = SchemeKind::thm2_corner_r2;
        s.trials = 100000;
        s.seed = 5;
        s.state_q1 = s.state_q2 = 4.0;
        const SimResult r = run_analog(p, s, 2);
        detail += "thm2 pre=" + fmt(r.zeff_premod_var);
        if (std::fabs(r.zeff_premod_var - 0.5) > 4.0 * r.zeff_premod_se) ok = false;
        if (r.zeff_postmod_var > r.zeff_premod_var + 4.0 * r.zeff_postmod_se) ok = false;
    }
    {  // zero-noise chain with alpha = 1
        ChannelParams p = build_params(16.0, 1.0, 1e-300, 1.0, 1.0, 1.0);
        p.n1 = 0.0;
        SchemeSpec s;
        s.scheme = SchemeKind::thm2_corner_r2;
        s.trials = 100000;
        s.seed = 6;
        s.state_q1 = s.state_q2 = 4.0;
        s.alpha_override = std::make_pair(1.0, 1.0);
        const auto [pre, post] = measure_effective_noise(p, s, 2);
        detail += " zero=" + fmt(pre);
        if (pre != 0.0 || post != 0.0) ok = false;
    }
    {  // coefficient pair at 2/3, predicted 2/3
        const ChannelParams p = build_params(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        SchemeSpec s;
        s.scheme = SchemeKind::thm3_corner_r2;
        s.trials = 100000;
        s.seed = 7;
        s.state_q1 = s.state_q2 = 4.0;
        const SimResult r = run_analog(p, s, 2);
        detail += " thm3 pre=" + fmt(r.zeff_premod_var);
        if (std::fabs(r.zeff_premod_var - 2.0 / 3.0) > 4.0 * r.zeff_premod_se) ok = false;
        if (r.zeff_postmod_var > r.zeff_premod_var + 4.0 * r.zeff_postmod_se) ok = false;
    }
    report(6, "effective-noise variance matches closed forms at 1e5 trials", ok, detail);
}

// 7. 101-point MMSE sweeps land within one grid step of 0.5 and 2/3
void check_mmse_sweeps() {
    std::vector<double> grid;
    for (int i = 1; i <= 101; ++i) grid.push_back(i * 0.01);
    const double step = 0.01;
    bool ok = true;
    std::string detail;

    {
        const ChannelParams p = build_params(16.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        SchemeSpec s;
        s.scheme = SchemeKind::thm2_corner_r2;
        s.trials = 2000000;
        s.seed = 11;
        s.state_q1 = s.state_q2 = 1.0;
        const AlphaSweepResult sw = sweep_alpha(p, s, grid, 2);
        detail += "thm2 argmin=" + fmt(sw.grid[sw.argmin]);
        if (std::fabs(sw.grid[sw.argmin] - 0.5) > step + 1e-12) ok = false;
    }
    {
        const ChannelParams p = build_params(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        SchemeSpec s;
        s.scheme = SchemeKind::thm3_corner_r2;
        s.trials = 2000000;
        s.seed = 12;
        s.state_q1 = s.state_q2 = 1.0;
        const AlphaSweepResult sw = sweep_alpha(p, s, grid, 2);
        detail += " thm3 argmin=" + fmt(sw.grid[sw.argmin]);
        if (std::fabs(sw.grid[sw.argmin] - 2.0 / 3.0) > step + 1e-12) ok = false;
    }
    report(7, "MMSE sweeps: argmin within one grid step of 0.5 and 2/3", ok, detail);
}

// 8. lattice layer: moments, identities, crypto lemma
void check_lattice_layer() {
    bool ok = true;
    std::string detail;

    for (int n : {1, 2, 4, 8}) {
        const Lattice z = make_lattice(LatticeFamily::integer_cubic, n, 1.0);
        if (z.nsm != 1.0 / 12.0) ok = false;
    }

    const double s_unit_vol = std::sqrt(2.0 / std::sqrt(3.0));
    const Lattice hex = make_lattice(LatticeFamily::hexagonal, 2, s_unit_vol, 1000000);
    detail += "hex nsm=" + fmt(hex.nsm);
    if (std::fabs(hex.nsm - 0.080188) > 0.0005) ok = false;

    TrialRng rng(88, 0);
    const Lattice lats[] = {make_lattice(LatticeFamily::integer_cubic, 2, 0.9),
                            make_lattice(LatticeFamily::hexagonal, 2, 1.0, 10000)};
    for (const Lattice& L : lats) {
        for (int i = 0; i < 10000; ++i) {
            Vec x(L.n), y(L.n);
            for (int c = 0; c < L.n; ++c) {
                x[c] = 8.0 * (rng.uniform01() - 0.5);
                y[c] = 8.0 * (rng.uniform01() - 0.5);
            }
            const Vec mx = mod_lattice(L, x);
            if (norm_inf(mod_lattice(L, mx) - mx) != 0.0) ok = false;
            const Vec lhs = mod_lattice(L, mx + y);
            const Vec rhs = mod_lattice(L, x + y);
            if (norm_inf(lhs - rhs) > 1e-12 * (1.0 + norm_inf(rhs))) ok = false;
        }
    }

    // crypto lemma KS test at 1e5 samples
    const Lattice z1 = make_lattice(LatticeFamily::integer_cubic, 1, 1.0);
    TrialRng r1(21, 1), r2(21, 2);
    std::vector<double> base, shifted;
    base.reserve(100000);
    shifted.reserve(100000);
    Vec v(1);
    v[0] = 0.37;
    for (int i = 0; i < 100000; ++i) {
        base.push_back(sample_dither(z1, r1)[0]);
        shifted.push_back(mod_lattice(z1, v + sample_dither(z1, r2))[0]);
    }
    const double pks = oracles::ks_two_sample_p(base, shifted);
    detail += " ks_p=" + fmt(pks);
    if (pks < 0.001) ok = false;

    report(8, "lattice layer: nsm values, mod identities, crypto lemma", ok, detail);
}

// 9. binning bound vanishes and is monotone
void check_binning() {
    const auto p = build_params(1, 1, 1, 1, 1, 1);
    bool ok = true;

    const double at2 = binning_sum_rate_bound(p, 2.0, 2.0).value;
    const double want = 0.5 * std::log2(2.0 * 3.14159265358979323846 * 2.71828182845904523536);
    if (std::fabs(at2 - want) > 1e-12) ok = false;

    double prev = 1e18;
    for (double q : {2.0, 10.0, 100.0, 1e4, 1e6}) {
        const double v = binning_sum_rate_bound(p, q, q).value;
        if (v > prev) ok = false;
        prev = v;
    }
    for (double q : {1e3, 3e3, 1e4, 1e5, 1e6, 1e8}) {
        if (binning_sum_rate_bound(p, q, q).value != 0.0) ok = false;
    }
    report(9, "binning bound: value at Q=2, nonincreasing sweep, zero for Q >= 1e3", ok,
           "value(2)=" + fmt(at2));
}

// 10. digital-mode properties
void check_digital() {
    bool ok = true;
    std::string detail;

    {  // exact recovery with zero noise
        ChannelParams p = build_params(16.0, 1.0, 1e-300, 1.0, 1.0, 1.0);
        p.n1 = 0.0;
        SchemeSpec s;
        s.scheme = SchemeKind::thm2_corner_r2;
        s.trials = 20000;
        s.seed = 31;
        s.state_q1 = s.state_q2 = 4.0;
        const SimResult r = run_digital(p, s, 1, 2);
        detail += "ser0=" + fmt(*r.ser);
        if (*r.ser != 0.0) ok = false;
    }
    {  // saturation at extreme noise: ser -> 1 - 2^-(n k)
        const ChannelParams p = build_params(16.0, 1.0, 1e6, 1.0, 1.0, 1.0);
        SchemeSpec s;
        s.scheme = SchemeKind::thm2_corner_r2;
        s.trials = 100000;
        s.seed = 32;
        s.state_q1 = s.state_q2 = 1.0;
        s.alpha_override = std::make_pair(1.0, 1.0);
        const SimResult r = run_digital(p, s, 1, 2);
        detail += " ser_sat=" + fmt(*r.ser);
        if (std::fabs(*r.ser - 0.5) > 4.0 * r.ser_se) ok = false;
    }
    {  // high SNR: cross/noise = 100, 1e5 trials, ser <= 1e-2
        const ChannelParams p = build_params(1e4, 1.0, 0.01, 1.0, 1.0, 1.0);
        SchemeSpec s;
        s.scheme = SchemeKind::thm2_corner_r2;
        s.trials = 100000;
        s.seed = 33;
        s.state_q1 = s.state_q2 = 1.0;
        const SimResult r = run_digital(p, s, 1, 2);
        detail += " ser_hisnr=" + fmt(*r.ser);
        if (*r.ser > 1e-2) ok = false;
    }
    report(10, "digital mode: zero-noise exact, saturation, high-SNR error rate", ok, detail);
}

// 11. byte-identical simulate output under worker counts {1, 4}
void check_determinism() {
    const std::string path = write_temp("asdgic_accept_sim.json",
                                        R"({"p1":4,"p2":1,"n1":0.5,"n2":1,"a12":1.5,
                                            "a21":1.2,"q1":4,"q2":4})");
    const std::vector<std::string> base = {"simulate", path,   "--scheme",
                                           "thm3-corner-R2",   "--dim",    "2",
                                           "--trials", "30000", "--seed",  "17"};
    auto w1 = base;
    w1.insert(w1.end(), {"--workers", "1"});
    auto w4 = base;
    w4.insert(w4.end(), {"--workers", "4"});

    std::ostringstream o1, o4, o1b, e;
    const int c1 = cli::run_command(w1, o1, e);
    const int c4 = cli::run_command(w4, o4, e);
    const int c1b = cli::run_command(w1, o1b, e);
    const bool ok = c1 == 0 && c4 == 0 && c1b == 0 && o1.str() == o4.str() &&
                    o1.str() == o1b.str() && !o1.str().empty();
    report(11, "simulate output byte-identical under workers {1,4}", ok);
}

} // namespace

int main() {
    check_gap_table();
    check_gap_monotone();
    check_boundary_tightness();
    check_dominance();
    check_alignment();
    check_effective_noise();
    check_mmse_sweeps();
    check_lattice_layer();
    check_binning();
    check_digital();
    check_determinism();

    if (g_failures > 0) {
        std::printf("%d acceptance check(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance checks passed\n");
    return 0;
}
