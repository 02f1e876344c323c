/*
   Copyright 2026 The skrw Authors

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

#ifndef SKRW_IO_HPP
#define SKRW_IO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "discovery.hpp"
#include "report.hpp"

namespace skrw {

inline constexpr const char* kToolVersion = "skrw 1.0.0";
inline constexpr int kStructureSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Run configuration.

enum class Mode { realize, classical_check, discover, verify, sweep };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::realize: return "realize";
        case Mode::classical_check: return "classical-check";
        case Mode::discover: return "discover";
        case Mode::verify: return "verify";
        case Mode::sweep: return "sweep";
    }
    return "?";
}

inline Mode parse_mode(std::string_view s) {
    for (Mode m : {Mode::realize, Mode::classical_check, Mode::discover, Mode::verify, Mode::sweep})
        if (s == to_string(m)) return m;
    throw ParseError("unknown mode '" + std::string(s) + "'");
}

struct RunConfig {
    std::optional<Mode> mode;  ///< unset until a subcommand or config sets it
    SklyaninParams params = SklyaninParams::diagonal_point();
    std::size_t count = 100;
    std::uint64_t seed = 7;
    bool locus = false;  ///< sweep samples beta = delta = epsilon = 0
    std::string out;
    std::string in;
    std::size_t degree_cap = 3;
    bool human = false;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// "a,b,c,d,e,f" in the order alpha, beta, gamma, delta, epsilon, zeta.
inline SklyaninParams parse_params_list(std::string_view text) {
    std::array<Rat, 6> a;
    std::size_t n = 0, start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (n == 6) throw ParseError("expected 6 parameters, got more");
        a[n++] = parse_rat(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (n != 6) throw ParseError("expected 6 parameters, got " + std::to_string(n));
    return SklyaninParams::from_array(a);
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

inline std::uint64_t parse_unsigned(const std::string& v) {
    if (v.empty() || v.size() > 19) throw ParseError("expected a non-negative integer");
    for (char c : v)
        if (c < '0' || c > '9') throw ParseError("expected a non-negative integer");
    return std::stoull(v);
}

}  // namespace detail

/// Line-oriented `key = value` document. Values are "quoted strings",
/// bare integers or true/false; `#` starts a comment. Parameters accept
/// exact rationals only, so "0.5" is an error.
inline RunConfig parse_config(std::string_view text, RunConfig cfg = {}) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::array<std::optional<Rat>, 6> given;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        auto fail = [&](const std::string& field, const std::string& msg) -> ParseError {
            return ParseError("line " + std::to_string(line_no) + (field.empty() ? "" : ", field '" + field + "'") + ": " + msg);
        };
        std::string line = raw;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail("", "expected key = value");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw fail("", "empty key");
        if (!seen.insert(key).second) throw fail(key, "duplicate key");
        bool is_string = false;
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') throw fail(key, "unterminated string");
            value = value.substr(1, value.size() - 2);
            if (value.find('"') != std::string::npos) throw fail(key, "embedded quote");
            is_string = true;
        }
        if (value.empty() && !is_string) throw fail(key, "missing value");
        try {
            std::size_t pi = 6;
            for (std::size_t n = 0; n < 6; ++n)
                if (key == SklyaninParams::names[n]) pi = n;
            if (pi < 6) {
                given[pi] = parse_rat(value);
            } else if (key == "mode") {
                cfg.mode = parse_mode(value);
            } else if (key == "params") {
                const auto p = parse_params_list(value).as_array();
                for (std::size_t n = 0; n < 6; ++n) given[n] = p[n];
            } else if (key == "count") {
                cfg.count = static_cast<std::size_t>(detail::parse_unsigned(value));
            } else if (key == "seed") {
                cfg.seed = detail::parse_unsigned(value);
            } else if (key == "degree_cap") {
                cfg.degree_cap = static_cast<std::size_t>(detail::parse_unsigned(value));
                if (cfg.degree_cap < 3) throw ParseError("degree_cap must be at least 3");
            } else if (key == "threads") {
                cfg.threads = static_cast<unsigned>(detail::parse_unsigned(value));
            } else if (key == "locus" || key == "human") {
                if (value != "true" && value != "false") throw ParseError("expected true or false");
                (key == "locus" ? cfg.locus : cfg.human) = value == "true";
            } else if (key == "out") {
                cfg.out = value;
            } else if (key == "in") {
                cfg.in = value;
            } else {
                throw ParseError("unknown key");
            }
        } catch (const ParseError& e) {
            throw fail(key, e.what());
        }
    }
    std::size_t count = 0;
    for (const auto& g : given) count += g ? 1 : 0;
    if (count != 0 && count != 6) throw ParseError("parameters: all of alpha, beta, gamma, delta, epsilon, zeta are required");
    if (count == 6) cfg.params = {*given[0], *given[1], *given[2], *given[3], *given[4], *given[5]};
    return cfg;
}

// ---------------------------------------------------------------------------
// Documents.

inline Json params_json(const SklyaninParams& p) {
    Json j = Json::object();
    const auto a = p.as_array();
    for (std::size_t n = 0; n < 6; ++n) j[SklyaninParams::names[n]] = to_string(a[n]);
    return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json realization_json(const SklyaninRealization& r) {
    Json j;
    j["schema_version"] = kStructureSchemaVersion;
    j["flattening"] = "row-major";
    j["parameters"] = params_json(r.params);
    Json s = Json::object();
    for (std::size_t i = 0; i < 3; ++i) s["S" + std::to_string(i + 1)] = to_json(r.s[i]);
    j["S"] = std::move(s);
    j["Q"] = to_json(r.q);
    return j;
}

namespace detail {

inline const std::array<std::pair<const char*, const char*>, 5>& bracket_blocks() {
    static const std::array<std::pair<const char*, const char*>, 5> b{{{"SS", "SS"}, {"QS", "QS"}, {"ST", "ST"}, {"QT", "QT"}, {"TT", "TT"}}};
    return b;
}

inline char letter_kind(int l) { return l == kLetterQ ? 'Q' : (is_t_letter(l) ? 'T' : 'S'); }

inline Json keyed_polys(const std::vector<std::pair<std::string, NCPoly<Rat>>>& m) {
    Json a = Json::array();
    for (const auto& [k, p] : m) {
        Json e;
        e["key"] = k;
        e["terms"] = to_json(p, skrw_letters());
        a.push_back(std::move(e));
    }
    return a;
}

inline std::string t_name(int g) { return skrw_letters()[static_cast<std::size_t>(letter_t(g))]; }

}  // namespace detail

/// Generator order, bracket tables, maps and provenance. Coefficients are
/// "p/q" strings; words list generator names.
inline Json structure_json(const NWSOStructure& s) {
    const auto& names = skrw_letters();
    Json j;
    j["schema_version"] = kStructureSchemaVersion;
    j["flattening"] = "row-major";
    j["generators"] = names;
    j["degree_cap"] = s.degree_cap;

    Json br = Json::object();
    for (const auto& [key, kinds] : detail::bracket_blocks()) {
        Json block = Json::array();
        for (int a = 0; a < 9; ++a)
            for (int b = a + 1; b < 9; ++b) {
                if (detail::letter_kind(a) != kinds[0] || detail::letter_kind(b) != kinds[1]) continue;
                Json e;
                e["left"] = names[static_cast<std::size_t>(a)];
                e["right"] = names[static_cast<std::size_t>(b)];
                e["terms"] = to_json(s.table(a, b), names);
                block.push_back(std::move(e));
            }
        br[key] = std::move(block);
    }
    j["brackets"] = std::move(br);

    Json coeffs;
    coeffs["basis"] = "n < 15: S_(n/5+1) X + X S_(n/5+1) with X the T generator n%5 in order T11 T22 T12 T13 T23; n >= 15: S_(n-14) Q + Q S_(n-14)";
    Json xi = Json::object();
    for (int g = 0; g < 5; ++g)
        xi[detail::t_name(g)] = to_json(RatVector(s.xi.begin() + static_cast<long>(kXiPerGen * static_cast<std::size_t>(g)),
                                                  s.xi.begin() + static_cast<long>(kXiPerGen * static_cast<std::size_t>(g + 1))));
    coeffs["xi"] = std::move(xi);
    Json tt = Json::object();
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) {
            const auto off = static_cast<long>(kTtPerPair * tt_pair_index(g, h));
            tt[detail::t_name(g) + "," + detail::t_name(h)] = to_json(RatVector(s.tt.begin() + off, s.tt.begin() + off + static_cast<long>(kTtPerPair)));
        }
    coeffs["tt"] = std::move(tt);
    j["coefficients"] = std::move(coeffs);

    Json maps;
    maps["R"] = detail::keyed_polys(s.r_map);
    maps["T"] = detail::keyed_polys(s.t_map);
    maps["sigma"] = detail::keyed_polys(s.sigma);
    j["maps"] = std::move(maps);

    Json prov;
    prov["tool"] = kToolVersion;
    prov["parameters"] = params_json(s.params);
    prov["kappa"] = to_string(s.data.kappa);
    Json f = Json::object();
    for (std::size_t i = 0; i < 3; ++i) f["F" + std::to_string(i + 1)] = to_json(s.data.f[i]);
    prov["F_coefficients"] = std::move(f);
    Json t = Json::object();
    for (std::size_t n = 0; n < 6; ++n) t["T" + pair_name(n)] = to_json(s.family.t[n]);
    prov["T_matrices"] = std::move(t);
    prov["T_kernel_dimension"] = s.family.kernel_dimension;
    prov["T_normalization"] = s.family.normalization;
    Json dec;
    dec["j_convention"] = "single-count";
    dec["st_form"] = "corrected";
    dec["q_formula"] = "linear-system";
    dec["t_generators"] = "T11 T22 T12 T13 T23 traceless, T33 = -T11 - T22";
    dec["tt_form"] = "declared (no S Q terms) when consistent";
    prov["decisions"] = std::move(dec);
    j["provenance"] = std::move(prov);
    return j;
}

inline std::string emit_structure(const NWSOStructure& s) { return dump(structure_json(s)); }

/// A structure read back from a document, plus every place where the
/// document disagrees with what its own data implies.
struct ParsedStructure {
    NWSOStructure structure;
    std::vector<std::string> map_mismatches;  ///< stored R/T/sigma differs from the one derived from the brackets
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline Rat rat_field(const Json& j) {
    if (!j.is_string()) throw ParseError("coefficient must be a \"p/q\" string");
    return parse_rat(j.get<std::string>());
}

inline RatVector rat_vector(const Json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw ParseError("expected an array of " + std::to_string(n) + " rationals");
    RatVector v;
    for (const auto& x : j) v.push_back(rat_field(x));
    return v;
}

inline Mat3 mat_field(const Json& j) {
    const auto v = rat_vector(j, 9);
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = v[static_cast<std::size_t>(3 * r + c)];
    return m;
}

inline NCPoly<Rat> poly_field(const Json& terms) {
    if (!terms.is_array()) throw ParseError("terms must be an array");
    NCPoly<Rat> p;
    NCTable<Rat> names(skrw_letters());
    for (const auto& t : terms) {
        const Rat c = rat_field(field(t, "coefficient"));
        if (is_zero(c)) throw ParseError("zero coefficient stored");
        Word w;
        for (const auto& g : field(t, "word")) {
            if (!g.is_string()) throw ParseError("word entries must be generator names");
            try {
                w.push_back(static_cast<char>(names.index(g.get<std::string>())));
            } catch (const Error&) {
                throw ParseError("unknown generator '" + g.get<std::string>() + "'");
            }
        }
        p.add_term(w, c);
    }
    return p;
}

}  // namespace detail

inline ParsedStructure parse_structure_json(const Json& j) {
    using detail::field;
    if (field(j, "schema_version") != kStructureSchemaVersion) throw ParseError("unsupported schema_version");
    if (field(j, "generators") != Json(skrw_letters())) throw ParseError("generator list differs from the canonical order");
    ParsedStructure out;
    NWSOStructure& s = out.structure;
    const auto& cap = field(j, "degree_cap");
    if (!cap.is_number_unsigned() || cap.get<std::size_t>() < 3) throw ParseError("degree_cap must be an integer >= 3");
    s.degree_cap = cap.get<std::size_t>();

    const auto& prov = field(j, "provenance");
    {
        const auto& p = field(prov, "parameters");
        std::array<Rat, 6> a;
        for (std::size_t n = 0; n < 6; ++n) a[n] = detail::rat_field(field(p, SklyaninParams::names[n]));
        s.params = SklyaninParams::from_array(a);
    }
    s.data.kappa = detail::rat_field(field(prov, "kappa"));
    s.family.kappa = s.data.kappa;
    for (std::size_t i = 0; i < 3; ++i) s.data.f[i] = detail::rat_vector(field(field(prov, "F_coefficients"), ("F" + std::to_string(i + 1)).c_str()), 6);
    for (std::size_t n = 0; n < 6; ++n) s.family.t[n] = detail::mat_field(field(field(prov, "T_matrices"), ("T" + pair_name(n)).c_str()));
    const auto& kd = field(prov, "T_kernel_dimension");
    if (!kd.is_number_unsigned()) throw ParseError("T_kernel_dimension must be a non-negative integer");
    s.family.kernel_dimension = kd.get<std::size_t>();
    const auto& norm = field(prov, "T_normalization");
    if (!norm.is_string()) throw ParseError("T_normalization must be a string");
    s.family.normalization = norm.get<std::string>();

    const auto& coeffs = field(j, "coefficients");
    s.xi.assign(kXiCount, Rat(0));
    s.tt.assign(kTtCount, Rat(0));
    for (int g = 0; g < 5; ++g) {
        const auto v = detail::rat_vector(field(field(coeffs, "xi"), detail::t_name(g).c_str()), kXiPerGen);
        std::copy(v.begin(), v.end(), s.xi.begin() + static_cast<long>(kXiPerGen * static_cast<std::size_t>(g)));
        for (int h = g + 1; h < 5; ++h) {
            const auto key = detail::t_name(g) + "," + detail::t_name(h);
            const auto w = detail::rat_vector(field(field(coeffs, "tt"), key.c_str()), kTtPerPair);
            std::copy(w.begin(), w.end(), s.tt.begin() + static_cast<long>(kTtPerPair * tt_pair_index(g, h)));
        }
    }

    s.table = NCTable<Rat>(skrw_letters());
    std::set<std::pair<int, int>> covered;
    const auto& br = field(j, "brackets");
    for (const auto& [key, kinds] : detail::bracket_blocks()) {
        const auto& block = field(br, key);
        if (!block.is_array()) throw ParseError(std::string("bracket block ") + key + " must be an array");
        for (const auto& e : block) {
            const auto& l = field(e, "left");
            const auto& r = field(e, "right");
            if (!l.is_string() || !r.is_string()) throw ParseError("bracket sides must be generator names");
            int a, b;
            try {
                a = s.table.index(l.get<std::string>());
                b = s.table.index(r.get<std::string>());
            } catch (const Error& err) {
                throw ParseError(err.what());
            }
            if (a >= b || detail::letter_kind(a) != kinds[0] || detail::letter_kind(b) != kinds[1])
                throw ParseError(std::string("bracket [") + l.get<std::string>() + ", " + r.get<std::string>() + "] misplaced in block " + key);
            if (!covered.insert({a, b}).second) throw ParseError("duplicate bracket entry");
            s.table.set(a, b, detail::poly_field(field(e, "terms")));
        }
    }
    if (covered.size() != 36) throw ParseError("bracket tables must list all 36 generator pairs");

    derive_maps(s);
    const auto& maps = field(j, "maps");
    auto compare = [&](const char* name, const std::vector<std::pair<std::string, NCPoly<Rat>>>& derived) {
        const auto& stored = field(maps, name);
        if (!stored.is_array() || stored.size() != derived.size()) {
            out.map_mismatches.push_back(std::string(name) + ": wrong number of entries");
            return;
        }
        for (std::size_t n = 0; n < derived.size(); ++n) {
            const auto& e = stored[n];
            if (field(e, "key") != derived[n].first || detail::poly_field(field(e, "terms")) != derived[n].second)
                out.map_mismatches.push_back(std::string(name) + " " + derived[n].first);
        }
    };
    compare("R", s.r_map);
    compare("T", s.t_map);
    compare("sigma", s.sigma);
    return out;
}

inline ParsedStructure parse_structure(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_structure_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed structure: ") + e.what());
    }
}

}  // namespace skrw

#endif  // SKRW_IO_HPP
