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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "asdgic/envelope.hpp"
#include "asdgic/errors.hpp"
#include "asdgic/model.hpp"

// Closed-form sum-rate bounds for the strong-interference ASD-GIC, all in
// bits per channel use (log base 2 throughout).

namespace asdgic {

inline double half_log2(double v) { return 0.5 * std::log2(v); }
inline double pos_part(double v) { return v > 0.0 ? v : 0.0; }

enum class BoundKind { outer, capacity, achievable_raw, achievable_enveloped };

inline const char* bound_kind_name(BoundKind k) {
    switch (k) {
    case BoundKind::outer:                return "outer";
    case BoundKind::capacity:             return "capacity";
    case BoundKind::achievable_raw:       return "achievable-raw";
    case BoundKind::achievable_enveloped: return "achievable-enveloped";
    }
    return "?";
}

struct SumRateBound {
    double value = 0.0;          // bits per channel use
    BoundKind kind = BoundKind::outer;
    int limiting_decoder = 1;    // which decoder's branch attains the min (ties -> 1)
    RegimeFlags conditions;
    std::vector<std::string> warnings;
};

struct RatePoint {
    double r1 = 0.0, r2 = 0.0;
};

// Receiver scaling coefficients that minimize the effective-noise variance.
// Single-coefficient schemes use alpha1 == alpha2; two-coefficient schemes
// satisfy (alpha2/alpha1)^2 = a12*P2/P1 at decoder 1 (mirrored at decoder 2).
struct MmseCoeffs {
    int decoder = 1;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    bool is_pair = false;
    double alpha() const { return alpha1; }
};

struct BinningBound {
    double gamma = 0.0;         // 0.5*log2(2*pi*e*P1*P2/N1)
    double entropy_term = 0.0;  // 0.5*log2((Q1+Q2)/(Q1*Q2)) for Gaussian states
    double value = 0.0;         // [entropy_term + gamma]^+
};

struct GapRow {
    double x = 0.0;              // SNR P/N
    double term_outer = 0.0;     // 0.5*log2(1 + (x+1)^2/x)
    double term_inner_raw = 0.0; // [0.5*log2((2x^2+3x+1)/(2x+1))]^+
    double term_inner_env = 0.0; // time-sharing envelope of the inner term
    double gap = 0.0;            // term_outer - term_inner_env
};

namespace detail {

// cross-link power seen by the given decoder and its own noise variance
inline void decoder_view(const ChannelParams& p, int decoder, double& cross, double& own_p,
                         double& noise) {
    if (decoder == 1) {
        cross = p.a12 * p.p2;
        own_p = p.p1;
        noise = p.n1;
    } else if (decoder == 2) {
        cross = p.a21 * p.p1;
        own_p = p.p2;
        noise = p.n2;
    } else {
        fail(errc::bad_input, "decoder must be 1 or 2");
    }
}

inline double outer_branch(const ChannelParams& p, int decoder) {
    double cross, own_p, noise;
    decoder_view(p, decoder, cross, own_p, noise);
    return half_log2(1.0 + cross / noise);
}

inline double balanced_raw_value(double own_p, double cross, double noise) {
    const double num = own_p + cross + noise;
    const double den = 2.0 * noise + (std::sqrt(own_p) - std::sqrt(cross)) *
                                         (std::sqrt(own_p) - std::sqrt(cross));
    return pos_part(half_log2(num / den));
}

} // namespace detail

// Genie-aided outer bound on R1 + R2 in the limit of unbounded state power:
// min over decoders of 0.5*log2(1 + cross/N).
inline SumRateBound outer_sum_rate(const ChannelParams& p) {
    const double b1 = detail::outer_branch(p, 1);
    const double b2 = detail::outer_branch(p, 2);
    SumRateBound out;
    out.kind = BoundKind::outer;
    out.conditions = classify_regime(p);
    out.limiting_decoder = (b1 <= b2) ? 1 : 2;
    out.value = std::min(b1, b2);
    return out;
}

// Imbalanced regime: the lattice scheme meets the decoder's outer-bound
// branch exactly, so the value is capacity for that branch.
inline SumRateBound imbalanced_sum_rate(const ChannelParams& p, int decoder) {
    const RegimeFlags f = classify_regime(p);
    const bool ok = (decoder == 1) ? f.imbalanced_dec1 : f.imbalanced_dec2;
    double cross, own_p, noise;
    detail::decoder_view(p, decoder, cross, own_p, noise);
    if (!ok)
        fail(errc::condition_not_met,
             "imbalanced condition does not hold for decoder " + std::to_string(decoder));
    SumRateBound out;
    out.kind = BoundKind::capacity;
    out.conditions = f;
    out.limiting_decoder = decoder;
    out.value = half_log2(1.0 + cross / noise);
    return out;
}

// Nearly balanced regime, raw (un-enveloped) per-decoder rate:
// [0.5*log2((P_own + cross + N) / (2N + (sqrt(P_own) - sqrt(cross))^2))]^+.
// P_own == cross is flagged, not rejected: the expression stays finite and the
// corner-point analysis covers the boundary by continuity.
inline SumRateBound balanced_raw_rate(const ChannelParams& p, int decoder) {
    const RegimeFlags f = classify_regime(p);
    const bool ok = (decoder == 1) ? f.balanced_dec1 : f.balanced_dec2;
    double cross, own_p, noise;
    detail::decoder_view(p, decoder, cross, own_p, noise);
    if (!ok)
        fail(errc::condition_not_met,
             "balanced condition does not hold for decoder " + std::to_string(decoder));
    SumRateBound out;
    out.kind = BoundKind::achievable_raw;
    out.conditions = f;
    out.limiting_decoder = decoder;
    out.value = detail::balanced_raw_value(own_p, cross, noise);
    if (own_p == cross)
        out.warnings.push_back("degenerate-equality: own power equals cross power for decoder " +
                               std::to_string(decoder));
    return out;
}

// Single receiver coefficient minimizing var((alpha-1)*cross_signal + alpha*Z).
inline MmseCoeffs mmse_alpha_thm2(const ChannelParams& p, int decoder) {
    double cross, own_p, noise;
    detail::decoder_view(p, decoder, cross, own_p, noise);
    const double a = cross / (cross + noise);
    return MmseCoeffs{decoder, a, a, false};
}

// Two-coefficient pair for the nearly balanced schemes:
//   alpha1 = sqrt(P_own)  * (sqrt(P_own) + sqrt(cross)) / (P_own + cross + N)
//   alpha2 = sqrt(cross)  * (sqrt(P_own) + sqrt(cross)) / (P_own + cross + N)
// so (alpha2/alpha1)^2 equals cross/P_own by construction.
inline MmseCoeffs mmse_alphas_thm3(const ChannelParams& p, int decoder) {
    double cross, own_p, noise;
    detail::decoder_view(p, decoder, cross, own_p, noise);
    const double s_own = std::sqrt(own_p);
    const double s_cross = std::sqrt(cross);
    const double den = own_p + cross + noise;
    return MmseCoeffs{decoder, s_own * (s_own + s_cross) / den,
                      s_cross * (s_own + s_cross) / den, true};
}

namespace detail {

// per-decoder balanced rate as a function of free operating powers, used by
// the time-sharing envelope
inline double balanced_rate_fn(const ChannelParams& p, int decoder, double p1, double p2) {
    if (decoder == 1) return balanced_raw_value(p1, p.a12 * p2, p.n1);
    return balanced_raw_value(p2, p.a21 * p1, p.n2);
}

} // namespace detail

inline double balanced_enveloped_value(const ChannelParams& p, int decoder,
                                       const EnvelopeOptions& opt = {}) {
    return uce_at_power(
        [&](double p1, double p2) { return detail::balanced_rate_fn(p, decoder, p1, p2); },
        p.p1, p.p2, opt);
}

// Best per-decoder sum-rate: the capacity branch when the decoder's
// imbalanced condition holds, otherwise the enveloped balanced branch; the
// final bound is the min over decoders. The envelope is applied per decoder
// before the min.
inline SumRateBound achievable_sum_rate(const ChannelParams& p,
                                        const EnvelopeOptions& opt = {}) {
    const RegimeFlags f = classify_regime(p);
    SumRateBound out;
    out.conditions = f;

    double value[2];
    bool enveloped[2];
    for (int d = 1; d <= 2; ++d) {
        const bool imb = (d == 1) ? f.imbalanced_dec1 : f.imbalanced_dec2;
        const bool bal = (d == 1) ? f.balanced_dec1 : f.balanced_dec2;
        if (imb) {
            value[d - 1] = detail::outer_branch(p, d);
            enveloped[d - 1] = false;
        } else if (bal) {
            value[d - 1] = balanced_enveloped_value(p, d, opt);
            enveloped[d - 1] = true;
            double cross, own_p, noise;
            detail::decoder_view(p, d, cross, own_p, noise);
            if (own_p == cross)
                out.warnings.push_back(
                    "degenerate-equality: own power equals cross power for decoder " +
                    std::to_string(d));
        } else {
            fail(errc::no_applicable_regime,
                 "decoder " + std::to_string(d) + " satisfies neither regime condition");
        }
    }

    out.limiting_decoder = (value[0] <= value[1]) ? 1 : 2;
    out.value = std::min(value[0], value[1]);
    out.kind = (enveloped[0] || enveloped[1]) ? BoundKind::achievable_enveloped
                                              : BoundKind::capacity;
    // mixed-regime corollaries carry an extra P1,P2 >= 1 hypothesis; surface
    // a warning instead of rejecting
    if (enveloped[0] != enveloped[1] && (p.p1 < 1.0 || p.p2 < 1.0))
        out.warnings.push_back("mixed-regime result outside stated hypothesis P1,P2 >= 1");
    return out;
}

// Symmetric-model gap (P1 = P2 = P, N1 = N2 = N, a12 = a21 = a >= 1):
//   0.5*log2(1 + aP/N) - env{ [0.5*log2((P(1+a)+N) / (2N + P(1-sqrt(a))^2))]^+ }
// valid for N >= (sqrt(a)-1) P.
inline double gap_symmetric(double p, double n, double a, const EnvelopeOptions& opt = {}) {
    if (!(p > 0.0) || !(n > 0.0)) fail(errc::non_positive_value, "P and N must be > 0");
    if (!(a >= 1.0)) fail(errc::condition_not_met, "symmetric gap needs a >= 1");
    if (!(n >= (std::sqrt(a) - 1.0) * p))
        fail(errc::condition_not_met, "noise below the balanced-regime threshold");
    const double outer = half_log2(1.0 + a * p / n);
    const double sq = (1.0 - std::sqrt(a)) * (1.0 - std::sqrt(a));
    const double env = uce_power_ray(
        [&](double pp) { return pos_part(half_log2((pp * (1.0 + a) + n) / (2.0 * n + pp * sq))); },
        p, opt);
    return outer - env;
}

// Worst-case symmetric gap as a function of x = P/N, with the interference
// gain at its maximizing value a = ((P+N)/P)^2.
inline GapRow gap_tilde(double x, const EnvelopeOptions& opt = {}) {
    if (!(x > 0.0)) fail(errc::non_positive_value, "x must be > 0");
    auto inner = [](double t) {
        return pos_part(half_log2((2.0 * t * t + 3.0 * t + 1.0) / (2.0 * t + 1.0)));
    };
    GapRow row;
    row.x = x;
    row.term_outer = half_log2(1.0 + (x + 1.0) * (x + 1.0) / x);
    row.term_inner_raw = inner(x);
    row.term_inner_env = uce_power_ray(inner, x, opt);
    row.gap = row.term_outer - row.term_inner_env;
    return row;
}

// Random-binning sum-rate bound for Gaussian states with finite variances:
// [0.5*log2((Q1+Q2)/(Q1*Q2)) + 0.5*log2(2*pi*e*P1*P2/N1)]^+. Vanishes once
// the states are strong enough; the unbounded-state case is the documented
// limit 0 and must not be passed here.
inline BinningBound binning_sum_rate_bound(const ChannelParams& p, double q1, double q2) {
    if (!std::isfinite(q1) || !std::isfinite(q2))
        fail(errc::unbounded_state, "binning bound needs finite state variances");
    if (!(q1 > 0.0) || !(q2 > 0.0))
        fail(errc::non_positive_value, "state variances must be > 0");
    BinningBound b;
    b.gamma = half_log2(2.0 * 3.14159265358979323846 * 2.71828182845904523536 * p.p1 * p.p2 /
                        p.n1);
    b.entropy_term = half_log2((q1 + q2) / (q1 * q2));
    b.value = pos_part(b.entropy_term + b.gamma);
    return b;
}

// Corner points of the per-decoder sum-rate face: one user silent, the other
// at the full per-decoder rate; time sharing fills the segment in between.
inline RatePoint corner_point(const SumRateBound& bound, int silent_user) {
    if (silent_user == 1) return RatePoint{0.0, bound.value};
    return RatePoint{bound.value, 0.0};
}

} // namespace asdgic
