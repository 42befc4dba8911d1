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
#include <cstdint>
#include <string>

#include "asdgic/errors.hpp"
#include "asdgic/rng.hpp"
#include "asdgic/vecn.hpp"

namespace asdgic {

// Lattice families with exact closest-point decoders at fixed dimension.
// integer-cubic has closed-form moments; the others carry a Monte-Carlo
// second-moment estimate with its sample count and standard error.
enum class LatticeFamily { integer_cubic, hexagonal, d4, e8, generic };

inline const char* family_name(LatticeFamily f) {
    switch (f) {
    case LatticeFamily::integer_cubic: return "integer-cubic";
    case LatticeFamily::hexagonal:     return "hexagonal";
    case LatticeFamily::d4:            return "D4";
    case LatticeFamily::e8:            return "E8";
    case LatticeFamily::generic:       return "generic";
    }
    return "?";
}

struct Lattice {
    LatticeFamily family = LatticeFamily::integer_cubic;
    int n = 1;
    double scale = 1.0;                  // multiplier on the family's base generator
    std::array<double, 64> basis{};      // column-major generator, includes scale
    std::array<double, 64> basis_inv{};
    std::array<double, 8> inv_row_norm{};// 2-norms of basis_inv rows (enumeration windows)
    double volume = 1.0;                 // |det basis|
    double sigma2 = 0.0;                 // second moment per dimension
    double sigma2_se = 0.0;              // 0 when closed-form
    std::uint64_t sigma2_samples = 0;    // 0 when closed-form
    double nsm = 0.0;                    // sigma2 / volume^(2/n)

    double b(int r, int c) const { return basis[static_cast<std::size_t>(c * n + r)]; }
    double binv(int r, int c) const { return basis_inv[static_cast<std::size_t>(c * n + r)]; }
};

namespace detail {

// dst = B * z
inline Vec basis_mul(const Lattice& L, const Vec& z) {
    Vec p(L.n);
    for (int r = 0; r < L.n; ++r) {
        double s = 0.0;
        for (int c = 0; c < L.n; ++c) s += L.b(r, c) * z[c];
        p[r] = s;
    }
    return p;
}

inline Vec basis_inv_mul(const Lattice& L, const Vec& x) {
    Vec z(L.n);
    for (int r = 0; r < L.n; ++r) {
        double s = 0.0;
        for (int c = 0; c < L.n; ++c) s += L.binv(r, c) * x[c];
        z[r] = s;
    }
    return z;
}

inline double det_and_inverse(int n, const std::array<double, 64>& m,
                              std::array<double, 64>& inv) {
    // Gauss-Jordan with partial pivoting; n <= 8
    double a[8][16];
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a[r][c] = m[static_cast<std::size_t>(c * n + r)];
            a[r][n + c] = (r == c) ? 1.0 : 0.0;
        }
    }
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) fail(errc::bad_input, "singular generator matrix");
        if (piv != col) {
            for (int c = 0; c < 2 * n; ++c) std::swap(a[piv][c], a[col][c]);
            det = -det;
        }
        det *= a[col][col];
        const double s = 1.0 / a[col][col];
        for (int c = 0; c < 2 * n; ++c) a[col][c] *= s;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv[static_cast<std::size_t>(c * n + r)] = a[r][n + c];
    return det;
}

// Nearest point of the D_n lattice (integer vectors with even coordinate sum):
// round every coordinate, then if the parity is odd re-round the coordinate
// with the largest rounding error to the other side (lowest index on ties).
inline void nearest_dn(const double* y, int n, double* out) {
    long long sum = 0;
    double worst = -1.0;
    int wi = 0;
    for (int i = 0; i < n; ++i) {
        const double f = std::nearbyint(y[i]);
        out[i] = f;
        sum += static_cast<long long>(f);
        const double e = std::fabs(y[i] - f);
        if (e > worst) {
            worst = e;
            wi = i;
        }
    }
    if (sum & 1LL) out[wi] += (y[wi] >= out[wi]) ? 1.0 : -1.0;
}

// Babai rounding followed by an exact window search. The window is sized from
// the rounding residual so the true nearest point is always inside it.
inline Vec nearest_enumerated(const Lattice& L, const Vec& x) {
    const Vec zt = basis_inv_mul(L, x);
    Vec z0(L.n);
    for (int i = 0; i < L.n; ++i) z0[i] = std::nearbyint(zt[i]);
    const Vec p0 = basis_mul(L, z0);
    const double r = std::sqrt(dist_sq(x, p0));

    int w[8];
    long long total = 1;
    for (int i = 0; i < L.n; ++i) {
        w[i] = static_cast<int>(std::floor(L.inv_row_norm[i] * r + 0.5)) + 1;
        total *= 2LL * w[i] + 1;
    }
    if (total > 2000000LL)
        fail(errc::bad_input, "generator matrix too ill-conditioned for enumeration");

    Vec best = p0;
    double best_d = dist_sq(x, p0);
    Vec z(L.n);
    int idx[8];
    for (int i = 0; i < L.n; ++i) idx[i] = -w[i];
    while (true) {
        for (int i = 0; i < L.n; ++i) z[i] = z0[i] + idx[i];
        const Vec p = basis_mul(L, z);
        const double d = dist_sq(x, p);
        if (d < best_d) {  // strict: first candidate in scan order wins ties
            best_d = d;
            best = p;
        }
        int i = L.n - 1;
        while (i >= 0 && idx[i] == w[i]) {
            idx[i] = -w[i];
            --i;
        }
        if (i < 0) break;
        ++idx[i];
    }
    return best;
}

} // namespace detail

// Nearest lattice point under the Euclidean norm. Ties on Voronoi facets are
// broken deterministically: round-half-to-even per coordinate for the cubic
// family, lowest-index candidate for the coset/enumeration decoders.
inline Vec nearest_point(const Lattice& L, const Vec& x) {
    Vec p(L.n);
    switch (L.family) {
    case LatticeFamily::integer_cubic: {
        const double s = L.scale;
        for (int i = 0; i < L.n; ++i) p[i] = s * std::nearbyint(x[i] / s);
        return p;
    }
    case LatticeFamily::d4: {
        const double s = L.scale;
        double y[4], o[4];
        for (int i = 0; i < 4; ++i) y[i] = x[i] / s;
        detail::nearest_dn(y, 4, o);
        for (int i = 0; i < 4; ++i) p[i] = s * o[i];
        return p;
    }
    case LatticeFamily::e8: {
        // E8 = D8 union (D8 + 1/2); decode both cosets, keep the nearer
        const double s = L.scale;
        double y[8], c0[8], c1[8];
        for (int i = 0; i < 8; ++i) y[i] = x[i] / s;
        detail::nearest_dn(y, 8, c0);
        double yh[8];
        for (int i = 0; i < 8; ++i) yh[i] = y[i] - 0.5;
        detail::nearest_dn(yh, 8, c1);
        for (int i = 0; i < 8; ++i) c1[i] += 0.5;
        double d0 = 0.0, d1 = 0.0;
        for (int i = 0; i < 8; ++i) {
            d0 += (y[i] - c0[i]) * (y[i] - c0[i]);
            d1 += (y[i] - c1[i]) * (y[i] - c1[i]);
        }
        const double* c = (d1 < d0) ? c1 : c0;
        for (int i = 0; i < 8; ++i) p[i] = s * c[i];
        return p;
    }
    case LatticeFamily::hexagonal:
        return detail::nearest_enumerated(L, x);
    case LatticeFamily::generic:
        if (L.n > 4) fail(errc::unsupported_dimension, "generic family supports n <= 4");
        return detail::nearest_enumerated(L, x);
    }
    fail(errc::unsupported_family, "unknown lattice family");
}

// x mod Lambda = x - Q(x); lands in the fundamental Voronoi region.
inline Vec mod_lattice(const Lattice& L, const Vec& x) {
    return x - nearest_point(L, x);
}

// Dither uniform over the fundamental Voronoi region: push a uniform point of
// the fundamental parallelepiped through mod-Lambda (volume-preserving).
template <class Rng>
Vec sample_dither(const Lattice& L, Rng& rng) {
    Vec u(L.n);
    for (int i = 0; i < L.n; ++i) u[i] = rng.uniform01();
    return mod_lattice(L, detail::basis_mul(L, u));
}

namespace detail {

inline void fill_base_basis(LatticeFamily f, int n, double s, std::array<double, 64>& b) {
    b.fill(0.0);
    auto set = [&](int r, int c, double v) { b[static_cast<std::size_t>(c * n + r)] = v; };
    switch (f) {
    case LatticeFamily::integer_cubic:
        for (int i = 0; i < n; ++i) set(i, i, s);
        break;
    case LatticeFamily::hexagonal:
        set(0, 0, s); set(1, 0, 0.0);
        set(0, 1, 0.5 * s); set(1, 1, 0.86602540378443864676 * s);
        break;
    case LatticeFamily::d4:
        // columns (1,1,0,0), (1,-1,0,0), (0,1,-1,0), (0,0,1,-1); |det| = 2
        set(0, 0, s); set(1, 0, s);
        set(0, 1, s); set(1, 1, -s);
        set(1, 2, s); set(2, 2, -s);
        set(2, 3, s); set(3, 3, -s);
        break;
    case LatticeFamily::e8:
        // standard generator of the Gosset lattice; |det| = 1
        set(0, 0, 2 * s);
        for (int c = 1; c <= 6; ++c) {
            set(c - 1, c, -s);
            set(c, c, s);
        }
        for (int r = 0; r < 8; ++r) set(r, 7, 0.5 * s);
        break;
    case LatticeFamily::generic:
        fail(errc::bad_input, "generic lattices take an explicit generator");
    }
}

inline void finish_geometry(Lattice& L) {
    const double det = det_and_inverse(L.n, L.basis, L.basis_inv);
    L.volume = std::fabs(det);
    for (int r = 0; r < L.n; ++r) {
        double s = 0.0;
        for (int c = 0; c < L.n; ++c) s += L.binv(r, c) * L.binv(r, c);
        L.inv_row_norm[r] = std::sqrt(s);
    }
}

inline void estimate_second_moment(Lattice& L, std::uint64_t samples, std::uint64_t seed) {
    TrialRng rng(seed, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t t = 0; t < samples; ++t) {
        const Vec d = sample_dither(L, rng);
        const double v = norm_sq(d) / L.n;
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(samples);
    const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
    L.sigma2 = mean;
    L.sigma2_se = std::sqrt(var / static_cast<double>(samples));
    L.sigma2_samples = samples;
}

} // namespace detail

inline Lattice make_lattice(LatticeFamily family, int n, double scale,
                            std::uint64_t sigma2_samples = 200000,
                            std::uint64_t moment_seed = 0x5eed05ec002ULL) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        fail(errc::non_positive_scale, "lattice scale must be positive");
    if (n < 1 || n > kMaxDim) fail(errc::unsupported_dimension, "dimension must be 1..8");
    switch (family) {
    case LatticeFamily::hexagonal:
        if (n != 2) fail(errc::unsupported_dimension, "hexagonal lattice is 2-dimensional");
        break;
    case LatticeFamily::d4:
        if (n != 4) fail(errc::unsupported_dimension, "D4 lattice is 4-dimensional");
        break;
    case LatticeFamily::e8:
        if (n != 8) fail(errc::unsupported_dimension, "E8 lattice is 8-dimensional");
        break;
    default:
        break;
    }

    Lattice L;
    L.family = family;
    L.n = n;
    L.scale = scale;
    detail::fill_base_basis(family, n, scale, L.basis);
    detail::finish_geometry(L);

    if (family == LatticeFamily::integer_cubic) {
        L.sigma2 = scale * scale / 12.0;
        L.sigma2_se = 0.0;
        L.sigma2_samples = 0;
    } else {
        if (sigma2_samples < 10000)
            fail(errc::bad_input, "need at least 1e4 samples for the second moment");
        detail::estimate_second_moment(L, sigma2_samples, moment_seed);
    }
    L.nsm = L.sigma2 / std::pow(L.volume, 2.0 / L.n);
    return L;
}

inline Lattice make_generic_lattice(int n, const std::array<double, 64>& basis,
                                    std::uint64_t sigma2_samples = 200000,
                                    std::uint64_t moment_seed = 0x5eed05ec002ULL) {
    if (n < 1 || n > 4) fail(errc::unsupported_dimension, "generic family supports n <= 4");
    Lattice L;
    L.family = LatticeFamily::generic;
    L.n = n;
    L.scale = 1.0;
    L.basis = basis;
    detail::finish_geometry(L);
    if (sigma2_samples < 10000)
        fail(errc::bad_input, "need at least 1e4 samples for the second moment");
    detail::estimate_second_moment(L, sigma2_samples, moment_seed);
    L.nsm = L.sigma2 / std::pow(L.volume, 2.0 / L.n);
    return L;
}

// c * Lambda: generator scales by c, volume by c^n, second moment by c^2,
// normalized second moment unchanged.
inline Lattice scale_lattice(const Lattice& L, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        fail(errc::non_positive_scale, "scale factor must be positive");
    Lattice out = L;
    out.scale = L.scale * c;
    for (auto& v : out.basis) v *= c;
    out.volume = L.volume * std::pow(c, L.n);
    for (auto& v : out.basis_inv) v /= c;
    for (auto& v : out.inv_row_norm) v /= c;
    out.sigma2 = L.sigma2 * c * c;
    out.sigma2_se = L.sigma2_se * c * c;
    out.nsm = L.nsm;
    return out;
}

inline double second_moment(const Lattice& L) { return L.sigma2; }
inline double normalized_second_moment(const Lattice& L) { return L.nsm; }

// Finite-dimension shaping loss relative to an ideal quantization lattice,
// 0.5*log2(2*pi*e*G(Lambda)) bits.
inline double shaping_loss_bits(const Lattice& L) {
    return 0.5 * std::log2(2.0 * 3.14159265358979323846 * 2.71828182845904523536 * L.nsm);
}

} // namespace asdgic
