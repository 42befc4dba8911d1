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

#include <array>
#include <cmath>
#include <cstddef>

namespace asdgic {

inline constexpr int kMaxDim = 8;

// Small value-type vector for lattice points; dimensions run 1..8 so no heap
// traffic in the Monte-Carlo loop.
struct Vec {
    std::array<double, kMaxDim> a{};
    int n = 0;

    Vec() = default;
    explicit Vec(int dim) : n(dim) {}

    double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) a[i] += o.a[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n; ++i) a[i] -= o.a[i];
        return *this;
    }
    Vec& operator*=(double c) {
        for (int i = 0; i < n; ++i) a[i] *= c;
        return *this;
    }

    friend Vec operator+(Vec x, const Vec& y) { return x += y; }
    friend Vec operator-(Vec x, const Vec& y) { return x -= y; }
    friend Vec operator*(double c, Vec x) { return x *= c; }
};

inline double norm_sq(const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) s += x.a[i] * x.a[i];
    return s;
}

inline double norm_inf(const Vec& x) {
    double m = 0.0;
    for (int i = 0; i < x.n; ++i) m = std::max(m, std::fabs(x.a[i]));
    return m;
}

inline double dist_sq(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) {
        const double d = x.a[i] - y.a[i];
        s += d * d;
    }
    return s;
}

} // namespace asdgic
