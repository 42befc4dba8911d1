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

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "asdgic/errors.hpp"

namespace asdgic {

// State variance: a finite positive number or the distinguished "unbounded"
// marker. Unbounded is a first-class value, never a large float; consumers
// must branch on it explicitly.
class StateVar {
public:
    static StateVar unbounded() { return StateVar(true, 0.0); }

    static StateVar finite(double q) {
        if (!(q > 0.0) || !std::isfinite(q))
            fail(errc::non_positive_value, "finite state variance must be > 0");
        return StateVar(false, q);
    }

    bool is_unbounded() const { return unbounded_; }

    double value() const {
        if (unbounded_)
            fail(errc::unbounded_state, "state variance is unbounded");
        return q_;
    }

    friend bool operator==(const StateVar& a, const StateVar& b) {
        return a.unbounded_ == b.unbounded_ && (a.unbounded_ || a.q_ == b.q_);
    }

private:
    StateVar(bool ub, double q) : q_(q), unbounded_(ub) {}
    double q_;
    bool unbounded_;
};

// Channel constants for the two-user additive state-dependent Gaussian
// interference channel:
//   Y1 = X1 + sqrt(a12) X2 + S1 + sqrt(a12) S2 + Z1
//   Y2 = sqrt(a21) X1 + X2 + sqrt(a21) S1 + S2 + Z2
struct ChannelParams {
    double p1, p2;       // transmit power caps (linear, per channel use)
    double n1, n2;       // noise variances
    double a12, a21;     // interference link power gains
    StateVar q1, q2;     // state variances
    bool strong_interference;  // a12 >= n1/n2 and a21 >= n2/n1
};

inline ChannelParams build_params(double p1, double p2, double n1, double n2,
                                  double a12, double a21,
                                  StateVar q1 = StateVar::unbounded(),
                                  StateVar q2 = StateVar::unbounded()) {
    auto need_pos = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            fail(errc::non_positive_value, std::string(name) + " must be > 0");
    };
    need_pos(p1, "p1");
    need_pos(p2, "p2");
    need_pos(n1, "n1");
    need_pos(n2, "n2");
    if (!(a12 >= 0.0) || !std::isfinite(a12)) fail(errc::negative_gain, "a12 must be >= 0");
    if (!(a21 >= 0.0) || !std::isfinite(a21)) fail(errc::negative_gain, "a21 must be >= 0");
    const bool strong = (a12 >= n1 / n2) && (a21 >= n2 / n1);
    return ChannelParams{p1, p2, n1, n2, a12, a21, q1, q2, strong};
}

// Per-decoder applicability of the two transmission regimes:
//   imbalanced (decoder 1):  N1 <= sqrt(a12 P2 P1) - a12 P2
//   balanced   (decoder 1):  N1 >= sqrt(a12 P2 P1) - min(a12 P2, P1)
// and the mirrored conditions with (a21, P1<->P2, N2) for decoder 2.
// Both can hold at the boundary; neither holds only inside the gap interval,
// which is empty when P1 <= a12 P2 (resp. P2 <= a21 P1).
struct RegimeFlags {
    bool imbalanced_dec1 = false;
    bool imbalanced_dec2 = false;
    bool balanced_dec1 = false;
    bool balanced_dec2 = false;
    std::vector<std::string> notes;
};

namespace detail {

inline std::string fmt_cond(const char* lhs, double l, const char* op, double r, bool hold) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %.12g %s %.12g -> %s", lhs, l, op, r,
                  hold ? "true" : "false");
    return buf;
}

} // namespace detail

inline RegimeFlags classify_regime(const ChannelParams& p) {
    RegimeFlags f;
    const double cross1 = p.a12 * p.p2;          // interfering power seen at decoder 1
    const double cross2 = p.a21 * p.p1;
    const double root1 = std::sqrt(cross1 * p.p1);
    const double root2 = std::sqrt(cross2 * p.p2);

    // Inequalities evaluated exactly as stated, no epsilon slack: inner and
    // outer bounds meet at the boundary and the tests rely on that.
    f.imbalanced_dec1 = p.n1 <= root1 - cross1;
    f.balanced_dec1 = p.n1 >= root1 - std::min(cross1, p.p1);
    f.imbalanced_dec2 = p.n2 <= root2 - cross2;
    f.balanced_dec2 = p.n2 >= root2 - std::min(cross2, p.p2);

    f.notes.push_back(detail::fmt_cond("decoder1 imbalanced N1 <= sqrt(a12*P2*P1) - a12*P2",
                                       p.n1, "<=", root1 - cross1, f.imbalanced_dec1));
    f.notes.push_back(detail::fmt_cond("decoder1 balanced N1 >= sqrt(a12*P2*P1) - min(a12*P2,P1)",
                                       p.n1, ">=", root1 - std::min(cross1, p.p1), f.balanced_dec1));
    f.notes.push_back(detail::fmt_cond("decoder2 imbalanced N2 <= sqrt(a21*P1*P2) - a21*P1",
                                       p.n2, "<=", root2 - cross2, f.imbalanced_dec2));
    f.notes.push_back(detail::fmt_cond("decoder2 balanced N2 >= sqrt(a21*P1*P2) - min(a21*P1,P2)",
                                       p.n2, ">=", root2 - std::min(cross2, p.p2), f.balanced_dec2));
    return f;
}

} // namespace asdgic
