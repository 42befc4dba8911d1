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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "asdgic/bounds.hpp"
#include "asdgic/errors.hpp"
#include "asdgic/lattice.hpp"
#include "asdgic/model.hpp"
#include "asdgic/rng.hpp"
#include "asdgic/vecn.hpp"

// Monte-Carlo execution of the dithered modulo-lattice transceiver chains.
// Every scheme is run literally (encoder equations, channel, receiver
// combination) and compared elementwise against its algebraically reduced
// form; the residual is pure floating-point error.

namespace asdgic {

enum class SchemeKind {
    thm2_corner_r2,              // single coefficient, message at user 2
    thm2_corner_r1,              // single coefficient, message at user 1
    thm3_corner_r2,              // coefficient pair, message at user 2
    thm3_corner_r1_appendix2,    // coefficient pair, message at user 1, fine-side decision
    thm3_corner_r1_appendix2_v2, // coefficient pair, message at user 1, coarse-side decision
};

inline const char* scheme_name(SchemeKind s) {
    switch (s) {
    case SchemeKind::thm2_corner_r2:              return "thm2-corner-R2";
    case SchemeKind::thm2_corner_r1:              return "thm2-corner-R1";
    case SchemeKind::thm3_corner_r2:              return "thm3-corner-R2";
    case SchemeKind::thm3_corner_r1_appendix2:    return "thm3-corner-R1-appendix2";
    case SchemeKind::thm3_corner_r1_appendix2_v2: return "thm3-corner-R1-appendix2-variant2";
    }
    return "?";
}

inline SchemeKind parse_scheme(const std::string& s) {
    if (s == "thm2-corner-R2") return SchemeKind::thm2_corner_r2;
    if (s == "thm2-corner-R1") return SchemeKind::thm2_corner_r1;
    if (s == "thm3-corner-R2") return SchemeKind::thm3_corner_r2;
    if (s == "thm3-corner-R1-appendix2") return SchemeKind::thm3_corner_r1_appendix2;
    if (s == "thm3-corner-R1-appendix2-variant2")
        return SchemeKind::thm3_corner_r1_appendix2_v2;
    fail(errc::unsupported_scheme, "unknown scheme '" + s + "'");
}

// How the transmitter-known states are drawn. gaussian needs a finite
// variance; voronoi-uniform draws states uniform over a scaled Voronoi region
// of the encoder's own coarse lattice, a bounded stand-in whose mod-reduction
// statistics match the unbounded limit exactly.
enum class StateMode { gaussian, voronoi_uniform };

inline const char* state_mode_name(StateMode m) {
    return m == StateMode::gaussian ? "gaussian" : "voronoi-uniform";
}

struct SchemeSpec {
    SchemeKind scheme = SchemeKind::thm2_corner_r2;
    int decoder = 1;
    LatticeFamily family = LatticeFamily::integer_cubic;
    int dim = 1;
    double lattice_scale = 1.0;   // extra multiplier on the power-calibrated Lambda_2
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    StateMode state_mode = StateMode::gaussian;
    double state_q1 = 1.0;  // variance (gaussian) or Voronoi scale (voronoi-uniform)
    double state_q2 = 1.0;
    // explicit coefficients instead of the closed-form MMSE values;
    // single-coefficient schemes read .first
    std::optional<std::pair<double, double>> alpha_override;
    std::uint64_t moment_samples = 200000;  // sigma2 Monte-Carlo budget, non-cubic families
};

// One full trial in the receiving decoder's canonical orientation (for
// decoder 2 the user indices are mirrored before the chain runs).
struct TrialTrace {
    Vec s1, s2, d1, d2, v, x1, x2, z1, y1, yd1, zeff;
    Vec reduced_form;  // right-hand side of the scheme's alignment identity
};

struct SimResult {
    double x1_power = 0.0, x1_power_se = 0.0;   // empirical per-dimension powers
    double x2_power = 0.0, x2_power_se = 0.0;
    double zeff_premod_var = 0.0, zeff_premod_se = 0.0;
    double zeff_postmod_var = 0.0, zeff_postmod_se = 0.0;
    double predicted_premod_var = 0.0;          // closed-form prediction
    double max_align_residual = 0.0;            // max over trials, relative inf-norm
    double alpha1 = 0.0, alpha2 = 0.0;          // coefficients actually used
    double sigma2_lat1 = 0.0, sigma2_lat2 = 0.0;// second moments of the code lattices
    double shaping_loss = 0.0;                  // 0.5*log2(2 pi e G) of the decision lattice
    std::optional<double> ser;                  // digital mode only
    double ser_se = 0.0;
    std::uint64_t trials = 0;
};

struct AlphaSweepResult {
    std::vector<double> grid;        // swept coefficient (alpha, or alpha2 with alpha1 slaved)
    std::vector<double> premod_var;  // empirical pre-mod effective-noise variance
    std::size_t argmin = 0;
    double closed_form = 0.0;        // MMSE coefficient for comparison
};

namespace detail {

// Scheme chain compiled to coefficient form. Canonical orientation: "1" is
// the receiving decoder's own link, "2" the interfering one, so
//   Y = X1 + sqrt(a) X2 + S1 + sqrt(a) S2 + Z,   Z ~ N(0, N).
//
//   X1  = mod1(e1v*V + e1s*S1 + e1d*D1)
//   X2  = mod2(e2v*V + e2s*S2 + e2d*D2)
//   Yd  = mod_dec(ry*Y + rd1*D1 + rd2*D2)
//   Yd == mod_dec(vc*V + cx1*X1 + cx2*X2 + cz*Z)   (alignment identity)
//   Zeff = mod_dec(cx1*X1 + cx2*X2 + cz*Z)
struct Chain {
    double a = 1.0, n = 1.0;  // canonical cross gain and noise variance
    double sqrt_a = 1.0, sigma_z = 1.0;
    double alpha1 = 0.0, alpha2 = 0.0;
    Lattice lat1, lat2, lat3;
    int dec_lattice = 3;      // 1 or 3
    int msg_lattice = 2;      // 1 or 2
    bool uses_d1 = false, uses_d2 = false;
    double e1v = 0.0, e1s = 0.0, e1d = 0.0;
    double e2v = 0.0, e2s = 0.0, e2d = 0.0;
    double ry = 0.0, rd1 = 0.0, rd2 = 0.0;
    double vc = 0.0, cx1 = 0.0, cx2 = 0.0, cz = 0.0;
    StateMode state_mode = StateMode::gaussian;
    double state_q1 = 1.0, state_q2 = 1.0;
    double predicted_premod_var = 0.0;
    // digital mode
    int nest_k = 0;  // 0 = analog
    double msg_step = 0.0, dec_step = 0.0;
    std::int64_t nest_m = 0;  // 2^k

    const Lattice& dec() const { return dec_lattice == 1 ? lat1 : lat3; }
    const Lattice& msg() const { return msg_lattice == 1 ? lat1 : lat2; }
};

inline ChannelParams mirror_params(const ChannelParams& p) {
    return ChannelParams{p.p2, p.p1, p.n2, p.n1, p.a21, p.a12, p.q2, p.q1,
                         p.strong_interference};
}

inline Chain compile_chain(const ChannelParams& params, const SchemeSpec& spec, int nest_k,
                           const Lattice* unit_hint = nullptr) {
    if (spec.decoder != 1 && spec.decoder != 2)
        fail(errc::bad_input, "decoder must be 1 or 2");
    const ChannelParams p = (spec.decoder == 1) ? params : mirror_params(params);

    Chain c;
    c.a = p.a12;
    c.n = p.n1;
    c.sqrt_a = std::sqrt(p.a12);
    c.sigma_z = std::sqrt(p.n1);
    c.state_mode = spec.state_mode;
    c.state_q1 = (spec.decoder == 1) ? spec.state_q1 : spec.state_q2;
    c.state_q2 = (spec.decoder == 1) ? spec.state_q2 : spec.state_q1;

    const bool pair_scheme = spec.scheme != SchemeKind::thm2_corner_r2 &&
                             spec.scheme != SchemeKind::thm2_corner_r1;
    if (spec.alpha_override) {
        c.alpha1 = spec.alpha_override->first;
        c.alpha2 = pair_scheme ? spec.alpha_override->second : spec.alpha_override->first;
    } else if (pair_scheme) {
        const MmseCoeffs m = mmse_alphas_thm3(params, spec.decoder);
        c.alpha1 = m.alpha1;
        c.alpha2 = m.alpha2;
    } else {
        const MmseCoeffs m = mmse_alpha_thm2(params, spec.decoder);
        c.alpha1 = c.alpha2 = m.alpha();
    }
    if (!(c.alpha1 > 0.0) || !(c.alpha2 > 0.0) || !std::isfinite(c.alpha1) ||
        !std::isfinite(c.alpha2))
        fail(errc::lattice_relation_violated,
             "scaling coefficients must be positive and finite");

    // Lambda_2 calibrated so its second moment is the interferer's power cap,
    // Lambda_3 = sqrt(a) Lambda_2, and Lambda_1 derived from the scheme's
    // scaling relation (Lambda_3 = alpha Lambda_1, or (alpha2/alpha1) Lambda_1).
    const Lattice unit = unit_hint ? *unit_hint
                                   : make_lattice(spec.family, spec.dim, 1.0,
                                                  spec.moment_samples);
    const double cal = std::sqrt(p.p2 / unit.sigma2) * spec.lattice_scale;
    c.lat2 = scale_lattice(unit, cal);
    c.lat3 = scale_lattice(c.lat2, c.sqrt_a);
    // single-coefficient schemes: Lambda_3 = alpha Lambda_1;
    // pair schemes: Lambda_3 = (alpha2/alpha1) Lambda_1
    c.lat1 = scale_lattice(c.lat3, pair_scheme ? c.alpha1 / c.alpha2 : 1.0 / c.alpha1);

    const double a1 = c.alpha1, a2 = c.alpha2;
    const double r21 = a2 / a1;
    switch (spec.scheme) {
    case SchemeKind::thm2_corner_r2:
        // X1 = mod1(-S1 - D1), X2 = mod2(V - alpha S2), Yd = mod3(alpha Y + alpha D1)
        c.uses_d1 = true;
        c.e1v = 0.0; c.e1s = -1.0; c.e1d = -1.0;
        c.e2v = 1.0; c.e2s = -a1; c.e2d = 0.0;
        c.ry = a1; c.rd1 = a1; c.rd2 = 0.0;
        c.vc = c.sqrt_a;
        c.cx1 = 0.0; c.cx2 = (a1 - 1.0) * c.sqrt_a; c.cz = a1;
        c.dec_lattice = 3; c.msg_lattice = 2;
        break;
    case SchemeKind::thm2_corner_r1:
        // X1 = mod1(V - S1), X2 = mod2(-alpha S2 - D2), Yd = mod3(alpha Y + sqrt(a) D2)
        c.uses_d2 = true;
        c.e1v = 1.0; c.e1s = -1.0; c.e1d = 0.0;
        c.e2v = 0.0; c.e2s = -a1; c.e2d = -1.0;
        c.ry = a1; c.rd1 = 0.0; c.rd2 = c.sqrt_a;
        c.vc = a1;
        c.cx1 = 0.0; c.cx2 = (a1 - 1.0) * c.sqrt_a; c.cz = a1;
        c.dec_lattice = 3; c.msg_lattice = 1;
        break;
    case SchemeKind::thm3_corner_r2:
        // X1 = mod1(-a1 S1 + D1), X2 = mod2(V - a2 S2 - D2),
        // Yd = mod3(a2 Y + sqrt(a) D2 - (a2/a1) D1)
        c.uses_d1 = c.uses_d2 = true;
        c.e1v = 0.0; c.e1s = -a1; c.e1d = 1.0;
        c.e2v = 1.0; c.e2s = -a2; c.e2d = -1.0;
        c.ry = a2; c.rd1 = -r21; c.rd2 = c.sqrt_a;
        c.vc = c.sqrt_a;
        c.cx1 = -(1.0 - a1) * r21; c.cx2 = (a2 - 1.0) * c.sqrt_a; c.cz = a2;
        c.dec_lattice = 3; c.msg_lattice = 2;
        break;
    case SchemeKind::thm3_corner_r1_appendix2:
        // X1 = mod1(V - a1 S1 + D1), X2 = mod2(-a2 S2 + D2),
        // Yd = mod1(a1 Y - sqrt(a)(a1/a2) D2 - D1)
        c.uses_d1 = c.uses_d2 = true;
        c.e1v = 1.0; c.e1s = -a1; c.e1d = 1.0;
        c.e2v = 0.0; c.e2s = -a2; c.e2d = 1.0;
        c.ry = a1; c.rd1 = -1.0; c.rd2 = -c.sqrt_a * a1 / a2;
        c.vc = 1.0;
        c.cx1 = a1 - 1.0; c.cx2 = -c.sqrt_a * (1.0 - a2) * a1 / a2; c.cz = a1;
        c.dec_lattice = 1; c.msg_lattice = 1;
        break;
    case SchemeKind::thm3_corner_r1_appendix2_v2:
        // X1 = mod1(V - a1 S1 + D1), X2 = mod2(-a2 S2 + D2),
        // Yd = mod3(a2 Y - sqrt(a) D2 - (a2/a1) D1)
        c.uses_d1 = c.uses_d2 = true;
        c.e1v = 1.0; c.e1s = -a1; c.e1d = 1.0;
        c.e2v = 0.0; c.e2s = -a2; c.e2d = 1.0;
        c.ry = a2; c.rd1 = -r21; c.rd2 = -c.sqrt_a;
        c.vc = r21;
        c.cx1 = -(1.0 - a1) * r21; c.cx2 = (a2 - 1.0) * c.sqrt_a; c.cz = a2;
        c.dec_lattice = 3; c.msg_lattice = 1;
        break;
    default:
        fail(errc::unsupported_scheme, "unknown scheme");
    }

    c.predicted_premod_var = c.cx1 * c.cx1 * c.lat1.sigma2 +
                             c.cx2 * c.cx2 * c.lat2.sigma2 + c.cz * c.cz * c.n;

    if (nest_k > 0) {
        if (spec.family != LatticeFamily::integer_cubic)
            fail(errc::unsupported_family, "digital mode needs the integer-cubic family");
        c.nest_k = nest_k;
        c.nest_m = std::int64_t{1} << nest_k;
        c.msg_step = c.msg().scale / static_cast<double>(c.nest_m);
        c.dec_step = c.dec().scale / static_cast<double>(c.nest_m);
    }

    if (c.state_mode == StateMode::gaussian &&
        (!(c.state_q1 > 0.0) || !(c.state_q2 > 0.0)))
        fail(errc::bad_input, "gaussian state mode needs finite positive variances");
    return c;
}

struct TrialOut {
    double x1_pow = 0.0, x2_pow = 0.0;
    double premod = 0.0, postmod = 0.0;
    double resid = 0.0;
    bool wrong = false;
};

// Draw order is fixed per trial: S1, S2, D1, D2, V, Z. Coefficient sweeps
// reuse the same seed so consecutive evaluations see common random numbers.
// premod_only skips the receiver path; coefficient sweeps only need the
// pre-mod effective noise.
template <bool premod_only, class Rng>
TrialOut run_trial_body(const Chain& c, Rng& rng, TrialTrace* trace) {
    const int n = c.lat1.n;

    auto gaussian_vec = [&](double sd) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = sd * rng.gaussian();
        return v;
    };
    auto state_vec = [&](const Lattice& lat, double q) {
        if (c.state_mode == StateMode::gaussian) return gaussian_vec(std::sqrt(q));
        Vec d = sample_dither(lat, rng);
        return q * d;  // q acts as the Voronoi scale factor here
    };

    const Vec s1 = state_vec(c.lat1, c.state_q1);
    const Vec s2 = state_vec(c.lat2, c.state_q2);
    Vec d1(n), d2(n);
    if (c.uses_d1) d1 = sample_dither(c.lat1, rng);
    if (c.uses_d2) d2 = sample_dither(c.lat2, rng);

    Vec v(n);
    std::int64_t msg_idx[kMaxDim] = {0};
    if (c.nest_k == 0) {
        v = sample_dither(c.msg(), rng);
    } else {
        // message = coset leader of the fine lattice mod the coarse one
        const std::int64_t m = c.nest_m;
        for (int i = 0; i < n; ++i) {
            std::int64_t j =
                static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(m)) - m / 2;
            if (j >= m / 2) j = m / 2 - 1;
            msg_idx[i] = j;
            v[i] = c.msg_step * static_cast<double>(j);
        }
    }

    const Vec z = gaussian_vec(c.sigma_z);

    const Vec x1 = mod_lattice(c.lat1, c.e1v * v + c.e1s * s1 + c.e1d * d1);
    const Vec x2 = mod_lattice(c.lat2, c.e2v * v + c.e2s * s2 + c.e2d * d2);
    const Vec premod_vec = c.cx1 * x1 + c.cx2 * x2 + c.cz * z;

    TrialOut out;
    out.premod = norm_sq(premod_vec) / n;
    if constexpr (premod_only) return out;

    const Vec y = x1 + c.sqrt_a * x2 + s1 + c.sqrt_a * s2 + z;
    const Lattice& dec = c.dec();
    const Vec yd = mod_lattice(dec, c.ry * y + c.rd1 * d1 + c.rd2 * d2);
    const Vec reduced = mod_lattice(dec, c.vc * v + premod_vec);
    const Vec zeff = mod_lattice(dec, premod_vec);

    out.x1_pow = norm_sq(x1) / n;
    out.x2_pow = norm_sq(x2) / n;
    out.postmod = norm_sq(zeff) / n;
    out.resid = norm_inf(yd - reduced) / (1.0 + norm_inf(yd));

    if (c.nest_k > 0) {
        // quantize to the fine lattice, reduce mod the coarse one, compare
        // leader indices (exact integer comparison)
        const std::int64_t m = c.nest_m;
        for (int i = 0; i < n; ++i) {
            std::int64_t got = std::llround(yd[i] / c.dec_step);
            got = ((got % m) + m + m / 2) % m - m / 2;
            if (got != msg_idx[i]) {
                out.wrong = true;
                break;
            }
        }
    }

    if (trace) {
        trace->s1 = s1; trace->s2 = s2; trace->d1 = d1; trace->d2 = d2;
        trace->v = v; trace->x1 = x1; trace->x2 = x2; trace->z1 = z;
        trace->y1 = y; trace->yd1 = yd; trace->zeff = zeff;
        trace->reduced_form = reduced;
    }
    return out;
}

inline TrialOut run_trial(const Chain& c, std::uint64_t seed, std::uint64_t trial,
                          TrialTrace* trace) {
    TrialRng rng(seed, trial);
    return run_trial_body<false>(c, rng, trace);
}

struct Accum {
    double sx1 = 0, sx1q = 0, sx2 = 0, sx2q = 0;
    double spre = 0, spreq = 0, spost = 0, spostq = 0;
    double max_resid = 0;
    std::uint64_t wrong = 0, count = 0;

    void add(const TrialOut& t) {
        sx1 += t.x1_pow; sx1q += t.x1_pow * t.x1_pow;
        sx2 += t.x2_pow; sx2q += t.x2_pow * t.x2_pow;
        spre += t.premod; spreq += t.premod * t.premod;
        spost += t.postmod; spostq += t.postmod * t.postmod;
        if (t.resid > max_resid) max_resid = t.resid;
        if (t.wrong) ++wrong;
        ++count;
    }
    void merge(const Accum& o) {
        sx1 += o.sx1; sx1q += o.sx1q; sx2 += o.sx2; sx2q += o.sx2q;
        spre += o.spre; spreq += o.spreq; spost += o.spost; spostq += o.spostq;
        max_resid = std::max(max_resid, o.max_resid);
        wrong += o.wrong; count += o.count;
    }
};

inline constexpr std::uint64_t kChunk = 4096;

// Trials are split into fixed-size chunks; workers claim chunks through an
// atomic counter and the chunk partials are merged pairwise in index order,
// so the aggregate is bitwise independent of the worker count.
inline Accum run_chunked(const Chain& c, std::uint64_t trials, std::uint64_t seed,
                         int workers) {
    if (trials < 1) fail(errc::bad_input, "need at least one trial");
    if (workers < 1) workers = 1;
    const std::uint64_t nchunks = (trials + kChunk - 1) / kChunk;
    std::vector<Accum> parts(nchunks);

    auto work = [&](std::atomic<std::uint64_t>& next) {
        for (;;) {
            const std::uint64_t ci = next.fetch_add(1);
            if (ci >= nchunks) return;
            Accum a;
            const std::uint64_t lo = ci * kChunk;
            const std::uint64_t hi = std::min(trials, lo + kChunk);
            for (std::uint64_t t = lo; t < hi; ++t) a.add(run_trial(c, seed, t, nullptr));
            parts[ci] = a;
        }
    };

    if (workers == 1 || nchunks == 1) {
        std::atomic<std::uint64_t> next{0};
        work(next);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const int nw = static_cast<int>(std::min<std::uint64_t>(workers, nchunks));
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back([&] { work(next); });
        for (auto& th : pool) th.join();
    }

    // pairwise tree over chunk partials
    std::vector<Accum> level = std::move(parts);
    while (level.size() > 1) {
        std::vector<Accum> up;
        up.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            Accum a = level[i];
            a.merge(level[i + 1]);
            up.push_back(a);
        }
        if (level.size() & 1) up.push_back(level.back());
        level = std::move(up);
    }
    return level[0];
}

inline SimResult finish_result(const Chain& c, const Accum& a, bool digital) {
    const double t = static_cast<double>(a.count);
    auto mean_se = [&](double s, double sq, double& mean, double& se) {
        mean = s / t;
        const double var = std::max(0.0, sq / t - mean * mean);
        se = std::sqrt(var / t);
    };
    SimResult r;
    mean_se(a.sx1, a.sx1q, r.x1_power, r.x1_power_se);
    mean_se(a.sx2, a.sx2q, r.x2_power, r.x2_power_se);
    mean_se(a.spre, a.spreq, r.zeff_premod_var, r.zeff_premod_se);
    mean_se(a.spost, a.spostq, r.zeff_postmod_var, r.zeff_postmod_se);
    r.predicted_premod_var = c.predicted_premod_var;
    r.max_align_residual = a.max_resid;
    r.alpha1 = c.alpha1;
    r.alpha2 = c.alpha2;
    r.sigma2_lat1 = c.lat1.sigma2;
    r.sigma2_lat2 = c.lat2.sigma2;
    r.shaping_loss = shaping_loss_bits(c.dec());
    r.trials = a.count;
    if (digital) {
        const double p = static_cast<double>(a.wrong) / t;
        r.ser = p;
        r.ser_se = std::sqrt(std::max(0.0, p * (1.0 - p)) / t);
    }
    return r;
}

inline constexpr int kMaxTrialDraws = 96;

// Pre-mod effective-noise means for many coefficient variants of one scheme
// over a common trial stream. Each trial's raw draws are recorded once and
// replayed through every variant; sums match running the variants separately
// with the same seed, term for term.
inline std::vector<double> run_sweep_chunked(const std::vector<Chain>& chains,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int workers) {
    if (trials < 1) fail(errc::bad_input, "need at least one trial");
    if (workers < 1) workers = 1;
    const std::size_t m = chains.size();
    const std::uint64_t nchunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> parts(nchunks);

    auto work = [&](std::atomic<std::uint64_t>& next) {
        for (;;) {
            const std::uint64_t ci = next.fetch_add(1);
            if (ci >= nchunks) return;
            std::vector<double> sums(m, 0.0);
            const std::uint64_t lo = ci * kChunk;
            const std::uint64_t hi = std::min(trials, lo + kChunk);
            std::uint64_t draws[kMaxTrialDraws];
            for (std::uint64_t t = lo; t < hi; ++t) {
                RecordingRng rec(seed, t, draws, kMaxTrialDraws);
                sums[0] += run_trial_body<true>(chains[0], rec, nullptr).premod;
                for (std::size_t i = 1; i < m; ++i) {
                    ReplayRng rep(draws, rec.count());
                    sums[i] += run_trial_body<true>(chains[i], rep, nullptr).premod;
                }
            }
            parts[ci] = std::move(sums);
        }
    };

    if (workers == 1 || nchunks == 1) {
        std::atomic<std::uint64_t> next{0};
        work(next);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const int nw = static_cast<int>(std::min<std::uint64_t>(workers, nchunks));
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back([&] { work(next); });
        for (auto& th : pool) th.join();
    }

    std::vector<std::vector<double>> level = std::move(parts);
    while (level.size() > 1) {
        std::vector<std::vector<double>> up;
        up.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            std::vector<double> s = level[i];
            for (std::size_t k = 0; k < m; ++k) s[k] += level[i + 1][k];
            up.push_back(std::move(s));
        }
        if (level.size() & 1) up.push_back(level.back());
        level = std::move(up);
    }
    for (double& s : level[0]) s /= static_cast<double>(trials);
    return level[0];
}

} // namespace detail

// Analog mode: continuous message uniform over the Voronoi region. Verifies
// the alignment identity, the transmit powers and the effective-noise
// statistics; deterministic for a given seed regardless of worker count.
inline SimResult run_analog(const ChannelParams& params, const SchemeSpec& spec,
                            int workers = 1) {
    const detail::Chain c = detail::compile_chain(params, spec, 0);
    return detail::finish_result(c, detail::run_chunked(c, spec.trials, spec.seed, workers),
                                 false);
}

// Digital mode: finite-rate stand-in. The message is a coset leader of the
// self-similar nested pair (fine = coarse / 2^k per dimension, k bits per
// dimension); the decoder quantizes the receiver output to the fine lattice
// and reduces mod the coarse one.
inline SimResult run_digital(const ChannelParams& params, const SchemeSpec& spec,
                             int nesting_exponent, int workers = 1) {
    if (nesting_exponent < 1 || nesting_exponent > 20)
        fail(errc::bad_input, "nesting exponent must be in 1..20");
    const detail::Chain c = detail::compile_chain(params, spec, nesting_exponent);
    return detail::finish_result(c, detail::run_chunked(c, spec.trials, spec.seed, workers),
                                 true);
}

// (pre-mod, post-mod) effective-noise variance per dimension.
inline std::pair<double, double> measure_effective_noise(const ChannelParams& params,
                                                         const SchemeSpec& spec,
                                                         int workers = 1) {
    const SimResult r = run_analog(params, spec, workers);
    return {r.zeff_premod_var, r.zeff_postmod_var};
}

// Full trace of a single trial, for inspection and tests.
inline TrialTrace trace_trial(const ChannelParams& params, const SchemeSpec& spec,
                              std::uint64_t trial) {
    const detail::Chain c = detail::compile_chain(params, spec, 0);
    TrialTrace tr;
    detail::run_trial(c, spec.seed, trial, &tr);
    return tr;
}

// Sweep the receiver coefficient over a grid and locate the empirical
// variance minimum. Two-coefficient schemes sweep alpha2 with alpha1 slaved
// through the lattice-scaling ratio, so the code lattices stay fixed across
// the sweep. All grid points reuse the same seed (common random numbers).
inline AlphaSweepResult sweep_alpha(const ChannelParams& params, const SchemeSpec& spec,
                                    const std::vector<double>& grid, int workers = 1) {
    if (grid.size() < 2) fail(errc::too_few_points, "alpha grid needs >= 2 points");
    const bool pair_scheme = spec.scheme != SchemeKind::thm2_corner_r2 &&
                             spec.scheme != SchemeKind::thm2_corner_r1;

    double ratio = 1.0;  // alpha1/alpha2 for pair schemes
    AlphaSweepResult out;
    if (pair_scheme) {
        const MmseCoeffs m = mmse_alphas_thm3(params, spec.decoder);
        ratio = m.alpha1 / m.alpha2;
        out.closed_form = m.alpha2;
    } else {
        out.closed_form = mmse_alpha_thm2(params, spec.decoder).alpha();
    }

    out.grid = grid;
    const Lattice unit = make_lattice(spec.family, spec.dim, 1.0, spec.moment_samples);
    std::vector<detail::Chain> chains;
    chains.reserve(grid.size());
    for (double a : grid) {
        if (!(a > 0.0)) fail(errc::bad_input, "alpha grid values must be positive");
        SchemeSpec s = spec;
        s.alpha_override = pair_scheme ? std::make_pair(ratio * a, a) : std::make_pair(a, a);
        chains.push_back(detail::compile_chain(params, s, 0, &unit));
    }
    out.premod_var = detail::run_sweep_chunked(chains, spec.trials, spec.seed, workers);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (out.premod_var[i] < out.premod_var[out.argmin]) out.argmin = i;
    return out;
}

} // namespace asdgic
