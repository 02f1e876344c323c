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

#ifndef SKRW_JET_HPP
#define SKRW_JET_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace skrw {

/// First-order jet over a set of unknowns: value + sum_u d_u * dx_u.
/// Products of two first-order parts are dropped and counted in
/// Jet::truncations(), so a caller can tell whether a computation stayed
/// affine in the unknowns.
class Jet {
public:
    using Grad = std::vector<std::pair<std::uint32_t, Rat>>;  ///< sorted by index, no zeros

    Jet() = default;
    Jet(const Rat& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Jet(int v) : v_(v) {}         // NOLINT(google-explicit-constructor)
    Jet(Rat v, Grad g) : v_(std::move(v)), g_(std::move(g)) {}

    static Jet variable(std::uint32_t index, const Rat& value) { return Jet(value, {{index, Rat(1)}}); }

    const Rat& value() const noexcept { return v_; }
    const Grad& grad() const noexcept { return g_; }
    bool is_constant() const noexcept { return g_.empty(); }

    static long& truncations() {
        thread_local long n = 0;
        return n;
    }

    Jet& operator+=(const Jet& o) {
        v_ += o.v_;
        g_ = merge(g_, o.g_, Rat(1));
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v_ -= o.v_;
        g_ = merge(g_, o.g_, Rat(-1));
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(const Jet& a) {
        Jet r = a;
        r.v_ = -r.v_;
        for (auto& [i, d] : r.g_) d = -d;
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        if (!a.g_.empty() && !b.g_.empty()) ++truncations();
        Jet r;
        r.v_ = a.v_ * b.v_;
        r.g_ = merge(scaled(a.g_, b.v_), b.g_, a.v_);
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (!a.g_.empty() && !b.g_.empty()) ++truncations();
        // d(a/b) = da/b - a db/b^2
        Jet r;
        r.v_ = a.v_ / b.v_;
        r.g_ = merge(scaled(a.g_, Rat(1) / b.v_), b.g_, Rat(-a.v_ / (b.v_ * b.v_)));
        return r;
    }
    friend bool operator==(const Jet& a, const Jet& b) { return a.v_ == b.v_ && a.g_ == b.g_; }

    std::string to_string() const {
        std::string s = skrw::to_string(v_);
        for (const auto& [i, d] : g_) s += (sgn(d) < 0 ? " - " : " + ") + Rat(abs(d)).get_str() + "*x" + std::to_string(i);
        return s;
    }

private:
    static Grad scaled(const Grad& g, const Rat& s) {
        Grad out;
        if (is_zero(s)) return out;
        out.reserve(g.size());
        for (const auto& [i, d] : g) out.emplace_back(i, d * s);
        return out;
    }
    /// a + s * b
    static Grad merge(const Grad& a, const Grad& b, const Rat& s) {
        if (b.empty() || is_zero(s)) return a;
        Grad out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, b[j].second * s);
                ++j;
            } else {
                Rat d = a[i].second + b[j].second * s;
                if (!is_zero(d)) out.emplace_back(a[i].first, std::move(d));
                ++i;
                ++j;
            }
        }
        return out;
    }

    Rat v_;
    Grad g_;
};

inline bool is_zero(const Jet& j) { return is_zero(j.value()) && j.grad().empty(); }
inline std::string to_string(const Jet& j) { return j.to_string(); }

/// Whether c can serve as a pivot.
inline bool is_unit(const Rat& c) { return !is_zero(c); }
inline bool is_unit(const Jet& c) { return !is_zero(c.value()); }

}  // namespace skrw

#endif  // SKRW_JET_HPP
