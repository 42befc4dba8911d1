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

#include <doctest.h>

#include "asdgic/model.hpp"
#include "asdgic/rng.hpp"

using namespace asdgic;

TEST_CASE("build_params validates and computes the strong-interference flag") {
    const ChannelParams p = build_params(1, 1, 1, 1, 1, 1);
    CHECK(p.strong_interference);
    CHECK(p.q1.is_unbounded());

    // a12 = 1 < N1/N2 = 2
    const ChannelParams weak = build_params(1, 1, 2, 1, 1, 1);
    CHECK_FALSE(weak.strong_interference);

    CHECK_THROWS_AS(build_params(1, -1, 1, 1, 1, 1), error);
    try {
        build_params(1, -1, 1, 1, 1, 1);
    } catch (const error& e) {
        CHECK(e.code() == errc::non_positive_value);
    }
    CHECK_THROWS_AS(build_params(1, 1, 0, 1, 1, 1), error);
    try {
        build_params(1, 1, 1, 1, -0.5, 1);
    } catch (const error& e) {
        CHECK(e.code() == errc::negative_gain);
    }
    CHECK_THROWS_AS(StateVar::finite(0.0), error);
    CHECK_THROWS_AS(StateVar::finite(-3.0), error);
    CHECK(StateVar::finite(2.0).value() == 2.0);
    CHECK_THROWS_AS(StateVar::unbounded().value(), error);
}

TEST_CASE("classify_regime evaluates the printed inequalities exactly") {
    SUBCASE("boundary case: both decoder-1 flags true") {
        // sqrt(a12 P2 P1) = 10, a12 P2 = 1 -> threshold 9 == N1
        const auto f = classify_regime(build_params(100, 1, 9, 1, 1, 1));
        CHECK(f.imbalanced_dec1);
        CHECK(f.balanced_dec1);  // 9 >= 10 - min(1,100) = 9
    }
    SUBCASE("degenerate sqrt(P1 a12 P2) == a12 P2") {
        const auto f = classify_regime(build_params(1, 1, 1, 1, 1, 1));
        CHECK_FALSE(f.imbalanced_dec1);  // needs N1 <= 0
        CHECK(f.balanced_dec1);          // 1 >= 0
    }
    SUBCASE("imbalanced without balanced") {
        // sqrt(16*4) = 8, a12 P2 = 4: imbalanced needs N1 <= 4, balanced N1 >= 4
        const auto f = classify_regime(build_params(16, 1, 2, 1, 4, 1));
        CHECK(f.imbalanced_dec1);
        CHECK_FALSE(f.balanced_dec1);
    }
    SUBCASE("notes describe all four conditions") {
        const auto f = classify_regime(build_params(1, 1, 1, 1, 1, 1));
        CHECK(f.notes.size() == 4);
    }
}

TEST_CASE("P1 <= a12 P2 forces the imbalanced flag off") {
    // the imbalanced threshold sqrt(a12 P2 P1) - a12 P2 is <= 0 there, and
    // N1 > 0 always
    TrialRng rng(0xC0FFEE, 0);
    for (int i = 0; i < 2000; ++i) {
        const double p1 = 0.05 + 10.0 * rng.uniform01();
        const double a12 = 0.1 + 5.0 * rng.uniform01();
        const double p2 = p1 / a12 * (1.0 + 3.0 * rng.uniform01());  // a12 p2 >= p1
        const double n1 = 0.01 + 5.0 * rng.uniform01();
        const auto f = classify_regime(build_params(p1, p2, n1, 1.0, a12, 1.0));
        CHECK_FALSE(f.imbalanced_dec1);
    }
}

TEST_CASE("classify_regime is pure") {
    const ChannelParams p = build_params(3, 0.7, 0.4, 1.1, 2.0, 1.4);
    const auto f1 = classify_regime(p);
    const auto f2 = classify_regime(p);
    CHECK(f1.imbalanced_dec1 == f2.imbalanced_dec1);
    CHECK(f1.balanced_dec1 == f2.balanced_dec1);
    CHECK(f1.imbalanced_dec2 == f2.imbalanced_dec2);
    CHECK(f1.balanced_dec2 == f2.balanced_dec2);
}

TEST_CASE("decoder-2 conditions use the a21 cross gain") {
    // mirror of the (16,1,a=4,N=2) decoder-1 case
    const auto f = classify_regime(build_params(1, 16, 1, 2, 1, 4));
    CHECK(f.imbalanced_dec2);
    CHECK_FALSE(f.balanced_dec2);
}
