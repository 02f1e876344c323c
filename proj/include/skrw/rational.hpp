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

#ifndef SKRW_RATIONAL_HPP
#define SKRW_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skrw {

/// Exact rational scalar. GMP keeps mpq values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rat& r) noexcept { return sgn(r) == 0; }

/// Parses "p", "-p", "p/q" with decimal integers. Anything else, floats
/// included, is rejected.
inline Rat parse_rat(std::string_view text) {
    auto digits_ok = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not an exact rational literal: '" + std::string(text) + "'");
    auto strip_plus = [](std::string_view s) { return std::string(s[0] == '+' ? s.substr(1) : s); };
    Int n(strip_plus(num), 10);
    Int d(strip_plus(den), 10);
    if (sgn(d) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rat& r) { return r.get_str(10); }

}  // namespace skrw

#endif  // SKRW_RATIONAL_HPP
