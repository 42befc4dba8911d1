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

#include <stdexcept>
#include <string>

namespace asdgic {

// Failure categories surfaced by the library. The CLI maps condition_not_met
// and no_applicable_regime to exit code 1 and everything else to exit code 2.
enum class errc {
    non_positive_value,
    negative_gain,
    unsupported_dimension,
    non_positive_scale,
    condition_not_met,
    unbounded_state,
    no_applicable_regime,
    lattice_relation_violated,
    unsupported_scheme,
    unsupported_family,
    unsorted_grid,
    too_few_points,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::non_positive_value:       return "NonPositiveValue";
    case errc::negative_gain:            return "NegativeGain";
    case errc::unsupported_dimension:    return "UnsupportedDimension";
    case errc::non_positive_scale:       return "NonPositiveScale";
    case errc::condition_not_met:        return "ConditionNotMet";
    case errc::unbounded_state:          return "UnboundedState";
    case errc::no_applicable_regime:     return "NoApplicableRegime";
    case errc::lattice_relation_violated:return "LatticeRelationViolated";
    case errc::unsupported_scheme:       return "UnsupportedScheme";
    case errc::unsupported_family:       return "UnsupportedFamily";
    case errc::unsorted_grid:            return "UnsortedGrid";
    case errc::too_few_points:           return "TooFewPoints";
    case errc::bad_input:                return "BadInput";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace asdgic
