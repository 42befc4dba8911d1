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
#include <cstdint>

#include "asdgic/errors.hpp"

namespace asdgic {

// Distribution layer shared by every raw-u64 source, so a recorded stream
// replays through bit-identical arithmetic.
template <class Derived>
class RngMixin {
public:
    // uniform on [0,1) with 53 random bits
    double uniform01() {
        return static_cast<double>(self().next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, second sample cached
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;  // avoid log(0)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    Derived& self() { return *static_cast<Derived*>(this); }
    double spare_ = 0.0;
    bool have_spare_ = false;
};

namespace detail {

inline constexpr std::uint64_t kRngGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
inline std::uint64_t rng_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Keyed counter core: draw i of stream (seed, trial) is a hash of the keyed
// counter, so streams never depend on scheduling.
struct CounterCore {
    std::uint64_t key;
    std::uint64_t counter = 0;

    CounterCore(std::uint64_t seed, std::uint64_t trial)
        : key(rng_mix(rng_mix(seed + kRngGamma) ^ rng_mix(trial * kRngGamma + 1))) {}

    std::uint64_t next() { return rng_mix(key + (++counter) * kRngGamma); }
};

} // namespace detail

// Counter-based per-trial random stream; each (seed, trial) pair owns an
// independent stream.
class TrialRng : public RngMixin<TrialRng> {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) : core_(seed, trial) {}
    std::uint64_t next_u64() { return core_.next(); }

private:
    detail::CounterCore core_;
};

// Same stream as TrialRng but copies every raw draw into a caller buffer.
class RecordingRng : public RngMixin<RecordingRng> {
public:
    RecordingRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t* buf, int cap)
        : core_(seed, trial), buf_(buf), cap_(cap) {}

    std::uint64_t next_u64() {
        if (count_ >= cap_) fail(errc::bad_input, "rng recording buffer too small");
        const std::uint64_t v = core_.next();
        buf_[count_++] = v;
        return v;
    }

    int count() const { return count_; }

private:
    detail::CounterCore core_;
    std::uint64_t* buf_;
    int cap_;
    int count_ = 0;
};

// Serves a previously recorded stream.
class ReplayRng : public RngMixin<ReplayRng> {
public:
    ReplayRng(const std::uint64_t* buf, int count) : buf_(buf), count_(count) {}

    std::uint64_t next_u64() {
        if (pos_ >= count_) fail(errc::bad_input, "rng replay exhausted");
        return buf_[pos_++];
    }

private:
    const std::uint64_t* buf_;
    int count_;
    int pos_ = 0;
};

} // namespace asdgic
