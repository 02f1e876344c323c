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

#ifndef SKRW_REPORT_HPP
#define SKRW_REPORT_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "classical.hpp"
#include "mat3.hpp"
#include "ncpoly.hpp"

namespace skrw {

using Json = nlohmann::ordered_json;

/// `finding`: the software ran correctly but a claim under audit did not
/// check out. `fail`: a check that holds by construction did not.
enum class Status { pass, fail, finding };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::finding: return "finding";
    }
    return "?";
}

struct Check {
    std::string name;
    Status status = Status::pass;
    std::string summary;
    Json detail = Json::object();  ///< witness data for fail and finding
};

class Report {
public:
    explicit Report(std::string mode) : mode_(std::move(mode)) {}

    Check& add(std::string name, Status status, std::string summary, Json detail = Json::object()) {
        checks_.push_back({std::move(name), status, std::move(summary), std::move(detail)});
        return checks_.back();
    }
    void append(const Report& other, const std::string& prefix = "") {
        for (auto c : other.checks_) {
            c.name = prefix + c.name;
            checks_.push_back(std::move(c));
        }
    }

    const std::vector<Check>& checks() const noexcept { return checks_; }
    const std::string& mode() const noexcept { return mode_; }
    Json& extra() { return extra_; }

    Status overall() const {
        Status s = Status::pass;
        for (const auto& c : checks_) {
            if (c.status == Status::fail) return Status::fail;
            if (c.status == Status::finding) s = Status::finding;
        }
        return s;
    }
    /// 0 pass, 2 verification failure, 3 finding.
    int exit_code() const {
        switch (overall()) {
            case Status::pass: return 0;
            case Status::fail: return 2;
            case Status::finding: return 3;
        }
        return 2;
    }

    Json to_json() const {
        Json j;
        j["schema_version"] = 1;
        j["mode"] = mode_;
        j["status"] = to_string(overall());
        Json arr = Json::array();
        for (const auto& c : checks_) {
            Json e;
            e["name"] = c.name;
            e["status"] = to_string(c.status);
            e["summary"] = c.summary;
            if (!c.detail.empty()) e["detail"] = c.detail;
            arr.push_back(std::move(e));
        }
        j["checks"] = std::move(arr);
        if (!extra_.is_null()) j["data"] = extra_;
        return j;
    }

    std::string to_human() const {
        std::ostringstream os;
        os << mode_ << ": " << to_string(overall()) << "\n";
        for (const auto& c : checks_) os << "  [" << to_string(c.status) << "] " << c.name << ": " << c.summary << "\n";
        return os.str();
    }

private:
    std::string mode_;
    std::vector<Check> checks_;
    Json extra_;
};

inline Json to_json(const Rat& r) { return to_string(r); }

/// Row-major list of nine "p/q" strings.
inline Json to_json(const Mat3& m) {
    Json a = Json::array();
    for (const auto& x : m.entries()) a.push_back(to_string(x));
    return a;
}

inline Json to_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline Json to_json(const NCPoly<Rat>& p, const std::vector<std::string>& names) {
    Json terms = Json::array();
    for (const auto& [w, c] : p.terms()) {
        Json word = Json::array();
        for (std::size_t i = 0; i < w.size(); ++i) word.push_back(names[static_cast<std::size_t>(letter(w, i))]);
        Json t;
        t["coefficient"] = to_string(c);
        t["word"] = std::move(word);
        terms.push_back(std::move(t));
    }
    return terms;
}

inline Json to_json(const CPoly& p, const std::vector<std::string>& names) { return p.to_string(names); }

}  // namespace skrw

#endif  // SKRW_REPORT_HPP
