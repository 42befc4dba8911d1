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

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "asdgic/errors.hpp"
#include "asdgic/lattice.hpp"
#include "asdgic/model.hpp"
#include "asdgic/simulate.hpp"

namespace asdgic {

// A scenario file is a JSON object with the channel constants
//   {p1, p2, n1, n2, a12, a21, q1, q2}
// where q1/q2 are numbers or the literal string "unbounded", plus optional
// settings {format, lattice_family, lattice_scale, state_mode, state_scale}.
// Unknown keys are rejected.
struct Scenario {
    double p1 = 1, p2 = 1, n1 = 1, n2 = 1, a12 = 1, a21 = 1;
    StateVar q1 = StateVar::unbounded();
    StateVar q2 = StateVar::unbounded();
    std::string format = "csv";                    // csv | json
    std::string lattice_family = "integer-cubic";  // integer-cubic | hexagonal | D4 | E8
    double lattice_scale = 1.0;
    std::string state_mode = "auto";  // auto | gaussian | voronoi-uniform
    double state_scale = 1.0;         // Voronoi scale for voronoi-uniform states

    ChannelParams params() const { return build_params(p1, p2, n1, n2, a12, a21, q1, q2); }

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.p1 == b.p1 && a.p2 == b.p2 && a.n1 == b.n1 && a.n2 == b.n2 &&
               a.a12 == b.a12 && a.a21 == b.a21 && a.q1 == b.q1 && a.q2 == b.q2 &&
               a.format == b.format && a.lattice_family == b.lattice_family &&
               a.lattice_scale == b.lattice_scale && a.state_mode == b.state_mode &&
               a.state_scale == b.state_scale;
    }
};

inline LatticeFamily parse_family(const std::string& s) {
    if (s == "integer-cubic") return LatticeFamily::integer_cubic;
    if (s == "hexagonal") return LatticeFamily::hexagonal;
    if (s == "D4") return LatticeFamily::d4;
    if (s == "E8") return LatticeFamily::e8;
    fail(errc::unsupported_family, "unknown lattice family '" + s + "'");
}

inline Scenario parse_scenario(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::bad_input, std::string("scenario parse error: ") + e.what());
    }
    if (!j.is_object()) fail(errc::bad_input, "scenario must be a JSON object");

    static const char* known[] = {"p1", "p2", "n1", "n2", "a12", "a21", "q1", "q2",
                                  "format", "lattice_family", "lattice_scale",
                                  "state_mode", "state_scale"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || (it.key() == k);
        if (!ok) fail(errc::bad_input, "unknown scenario key '" + it.key() + "'");
    }

    auto need_num = [&](const char* k) {
        if (!j.contains(k) || !j[k].is_number())
            fail(errc::bad_input, std::string("scenario needs numeric field '") + k + "'");
        return j[k].get<double>();
    };
    auto state_var = [&](const char* k) {
        if (!j.contains(k))
            fail(errc::bad_input, std::string("scenario needs field '") + k + "'");
        const auto& v = j[k];
        if (v.is_string()) {
            if (v.get<std::string>() != "unbounded")
                fail(errc::bad_input, std::string(k) + " must be a number or \"unbounded\"");
            return StateVar::unbounded();
        }
        if (!v.is_number())
            fail(errc::bad_input, std::string(k) + " must be a number or \"unbounded\"");
        return StateVar::finite(v.get<double>());
    };

    Scenario s;
    s.p1 = need_num("p1");
    s.p2 = need_num("p2");
    s.n1 = need_num("n1");
    s.n2 = need_num("n2");
    s.a12 = need_num("a12");
    s.a21 = need_num("a21");
    s.q1 = state_var("q1");
    s.q2 = state_var("q2");
    if (j.contains("format")) s.format = j["format"].get<std::string>();
    if (s.format != "csv" && s.format != "json")
        fail(errc::bad_input, "format must be csv or json");
    if (j.contains("lattice_family")) s.lattice_family = j["lattice_family"].get<std::string>();
    parse_family(s.lattice_family);  // validates
    if (j.contains("lattice_scale")) s.lattice_scale = j["lattice_scale"].get<double>();
    if (!(s.lattice_scale > 0.0)) fail(errc::bad_input, "lattice_scale must be > 0");
    if (j.contains("state_mode")) s.state_mode = j["state_mode"].get<std::string>();
    if (s.state_mode != "auto" && s.state_mode != "gaussian" &&
        s.state_mode != "voronoi-uniform")
        fail(errc::bad_input, "state_mode must be auto, gaussian or voronoi-uniform");
    if (j.contains("state_scale")) s.state_scale = j["state_scale"].get<double>();
    if (!(s.state_scale > 0.0)) fail(errc::bad_input, "state_scale must be > 0");

    s.params();  // validate channel constants now
    return s;
}

inline std::string scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["p1"] = s.p1;
    j["p2"] = s.p2;
    j["n1"] = s.n1;
    j["n2"] = s.n2;
    j["a12"] = s.a12;
    j["a21"] = s.a21;
    if (s.q1.is_unbounded()) j["q1"] = "unbounded"; else j["q1"] = s.q1.value();
    if (s.q2.is_unbounded()) j["q2"] = "unbounded"; else j["q2"] = s.q2.value();
    j["format"] = s.format;
    j["lattice_family"] = s.lattice_family;
    j["lattice_scale"] = s.lattice_scale;
    j["state_mode"] = s.state_mode;
    j["state_scale"] = s.state_scale;
    return j.dump(2) + "\n";
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::bad_input, "cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

// Resolve the scenario's state settings against a scheme spec: gaussian when
// both variances are finite, the bounded Voronoi-uniform stand-in otherwise.
inline void apply_state_settings(const Scenario& sc, SchemeSpec& spec) {
    std::string mode = sc.state_mode;
    if (mode == "auto")
        mode = (sc.q1.is_unbounded() || sc.q2.is_unbounded()) ? "voronoi-uniform" : "gaussian";
    if (mode == "gaussian") {
        if (sc.q1.is_unbounded() || sc.q2.is_unbounded())
            fail(errc::unbounded_state,
                 "gaussian state mode needs finite q1 and q2; use voronoi-uniform instead");
        spec.state_mode = StateMode::gaussian;
        spec.state_q1 = sc.q1.value();
        spec.state_q2 = sc.q2.value();
    } else {
        spec.state_mode = StateMode::voronoi_uniform;
        spec.state_q1 = sc.state_scale;
        spec.state_q2 = sc.state_scale;
    }
}

} // namespace asdgic
