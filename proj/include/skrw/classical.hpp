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

#ifndef SKRW_CLASSICAL_HPP
#define SKRW_CLASSICAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mat3.hpp"
#include "rational.hpp"

namespace skrw {

/// Exponent vector of a commutative monomial.
using CMonomial = std::vector<std::uint8_t>;

/// Commutative polynomial in a fixed number of variables.
class CPoly {
public:
    CPoly() = default;
    explicit CPoly(std::size_t nvars) : n_(nvars) {}

    static CPoly constant(std::size_t nvars, const Rat& c) {
        CPoly p(nvars);
        p.add_term(CMonomial(nvars, 0), c);
        return p;
    }
    static CPoly variable(std::size_t nvars, std::size_t v, const Rat& c = 1) {
        CPoly p(nvars);
        CMonomial m(nvars, 0);
        m[v] = 1;
        p.add_term(m, c);
        return p;
    }

    std::size_t nvars() const noexcept { return n_; }
    const std::map<CMonomial, Rat>& terms() const noexcept { return t_; }
    bool is_zero() const noexcept { return t_.empty(); }

    void add_term(const CMonomial& m, const Rat& c) {
        if (skrw::is_zero(c)) return;
        auto [it, fresh] = t_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (skrw::is_zero(it->second)) t_.erase(it);
        }
    }

    CPoly& operator+=(const CPoly& o) {
        adopt(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    CPoly& operator-=(const CPoly& o) {
        adopt(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    CPoly& operator*=(const Rat& s) {
        if (skrw::is_zero(s)) t_.clear();
        for (auto& [m, c] : t_) c *= s;
        return *this;
    }
    friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
    friend CPoly operator-(CPoly a) { return a *= Rat(-1); }
    friend CPoly operator*(CPoly a, const Rat& s) { return a *= s; }
    friend CPoly operator*(const Rat& s, CPoly a) { return a *= s; }
    friend CPoly operator*(const CPoly& a, const CPoly& b) {
        CPoly out(std::max(a.n_, b.n_));
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                CMonomial m(out.n_, 0);
                for (std::size_t i = 0; i < ma.size(); ++i) m[i] = static_cast<std::uint8_t>(m[i] + ma[i]);
                for (std::size_t i = 0; i < mb.size(); ++i) m[i] = static_cast<std::uint8_t>(m[i] + mb[i]);
                out.add_term(m, ca * cb);
            }
        return out;
    }
    friend bool operator==(const CPoly& a, const CPoly& b) { return a.t_ == b.t_; }

    CPoly derivative(std::size_t v) const {
        CPoly out(n_);
        for (const auto& [m, c] : t_) {
            if (m[v] == 0) continue;
            CMonomial d = m;
            --d[v];
            out.add_term(d, c * m[v]);
        }
        return out;
    }

    /// Substitutes variable v by the polynomial r.
    CPoly substitute(std::size_t v, const CPoly& r) const {
        CPoly out(n_);
        for (const auto& [m, c] : t_) {
            CMonomial rest = m;
            rest[v] = 0;
            CPoly term(n_);
            term.add_term(rest, c);
            for (int k = 0; k < m[v]; ++k) term = term * r;
            out += term;
        }
        return out;
    }

    /// Set of total degrees under per-variable weights.
    std::vector<int> weighted_degrees(const std::vector<int>& weight) const {
        std::vector<int> out;
        for (const auto& [m, c] : t_) {
            int d = 0;
            for (std::size_t i = 0; i < m.size(); ++i) d += weight[i] * m[i];
            if (out.empty() || out.back() != d) out.push_back(d);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, c] = *it;
            os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
            first = false;
            const Rat a = abs(c);
            bool unit = true;
            for (auto e : m) unit = unit && e == 0;
            if (a != 1 || unit) os << a.get_str() << (unit ? "" : "*");
            bool sep = false;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                os << (sep ? "*" : "") << names[i];
                if (m[i] > 1) os << "^" << int(m[i]);
                sep = true;
            }
        }
        return os.str();
    }

private:
    void adopt(const CPoly& o) {
        if (o.n_ > n_) {
            std::map<CMonomial, Rat> grown;
            for (auto& [m, c] : t_) {
                CMonomial g = m;
                g.resize(o.n_, 0);
                grown.emplace(std::move(g), c);
            }
            t_ = std::move(grown);
            n_ = o.n_;
        }
    }

    std::size_t n_ = 0;
    std::map<CMonomial, Rat> t_;
};

/// A generator of the classical algebra: s_i or t_jk (0-based, j <= k).
struct CGen {
    enum class Kind { s, t } kind;
    int i = 0, j = 0;

    std::string name() const {
        return kind == Kind::s ? "s" + std::to_string(i + 1) : "t" + std::to_string(i + 1) + std::to_string(j + 1);
    }
    friend bool operator==(const CGen&, const CGen&) = default;
};

/// How the {s_i, t_jk} entry is read. `literal` repeats t_lk in both
/// epsilon terms as printed; `corrected` uses eps_ikl t_jl in the second.
enum class StForm { literal, corrected };
/// `eliminated`: 8 generators with t33 = -t11 - t22. `untraced`: 9
/// generators, t33 independent, no trace constraint imposed.
enum class Presentation { eliminated, untraced };

inline const char* to_string(StForm f) { return f == StForm::literal ? "literal" : "corrected"; }
inline const char* to_string(Presentation p) { return p == Presentation::eliminated ? "eliminated" : "untraced"; }

/// Antisymmetric bracket table on the generators of a presentation.
struct BracketTable {
    Presentation presentation = Presentation::eliminated;
    StForm st_form = StForm::corrected;
    std::vector<CGen> gens;
    std::vector<std::vector<CPoly>> entry;  ///< entry[a][b] = {gens[a], gens[b]}

    std::size_t size() const noexcept { return gens.size(); }
    std::vector<std::string> names() const {
        std::vector<std::string> n;
        for (const auto& g : gens) n.push_back(g.name());
        return n;
    }
    /// deg(s) = 1, deg(t) = 2.
    std::vector<int> weights() const {
        std::vector<int> w;
        for (const auto& g : gens) w.push_back(g.kind == CGen::Kind::s ? 1 : 2);
        return w;
    }
};

namespace detail {

inline std::vector<CGen> classical_gens(Presentation p) {
    using K = CGen::Kind;
    std::vector<CGen> g{{K::s, 0, 0}, {K::s, 1, 0}, {K::s, 2, 0}, {K::t, 0, 0}, {K::t, 1, 1}};
    if (p == Presentation::untraced) g.push_back({K::t, 2, 2});
    g.insert(g.end(), {{K::t, 0, 1}, {K::t, 0, 2}, {K::t, 1, 2}});
    return g;
}

/// Evaluates generator symbols as polynomials in a presentation.
struct ClassicalSymbols {
    Presentation pres;
    std::vector<CGen> gens;

    std::size_t n() const { return gens.size(); }
    CPoly s(int i) const { return CPoly::variable(n(), static_cast<std::size_t>(i)); }
    CPoly t(int a, int b) const {
        if (a > b) std::swap(a, b);
        if (pres == Presentation::eliminated && a == 2 && b == 2)
            return -(t(0, 0) + t(1, 1));
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (gens[k].kind == CGen::Kind::t && gens[k].i == a && gens[k].j == b) return CPoly::variable(n(), k);
        throw std::logic_error("unknown t generator");
    }
};

/// Right-hand side for {s_i, t_jk}.
inline CPoly st_rhs(const ClassicalSymbols& sym, StForm form, int i, int j, int k) {
    CPoly v(sym.n());
    for (int l = 0; l < 3; ++l) {
        if (int e = eps0(i, j, l)) v += sym.t(l, k) * Rat(e);
        if (int e = eps0(i, k, l)) v += (form == StForm::literal ? sym.t(l, k) : sym.t(j, l)) * Rat(e);
    }
    return v;
}

/// Right-hand side for {t_ij, t_kl}: the four-term eps s t sum.
inline CPoly tt_rhs(const ClassicalSymbols& sym, int i, int j, int k, int l) {
    CPoly v(sym.n());
    for (int m = 0; m < 3; ++m) {
        auto add = [&](int e, int a, int b, int c, int d, int f, int g) {
            if (e) v += Rat(e) * (sym.s(a) * sym.t(b, c) + sym.s(d) * sym.t(f, g));
        };
        add(eps0(i, k, m), j, m, l, l, j, m);
        add(eps0(i, l, m), j, m, k, k, j, m);
        add(eps0(j, k, m), i, m, l, l, i, m);
        add(eps0(j, l, m), i, m, k, k, i, m);
    }
    return v;
}

inline CPoly generic_rhs(const ClassicalSymbols& sym, StForm form, const CGen& a, const CGen& b) {
    using K = CGen::Kind;
    if (a.kind == K::s && b.kind == K::s) {
        CPoly v(sym.n());
        for (int k = 0; k < 3; ++k)
            if (int e = eps0(a.i, b.i, k)) v += sym.s(k) * Rat(e);
        return v;
    }
    if (a.kind == K::s) return st_rhs(sym, form, a.i, b.i, b.j);
    if (b.kind == K::s) return -st_rhs(sym, form, b.i, a.i, a.j);
    return tt_rhs(sym, a.i, a.j, b.i, b.j);
}

}  // namespace detail

/// Bracket table of the classical algebra. The {s, t} and {t, s} halves
/// come from the same formula, so the table is antisymmetric whenever the
/// {t, t} block is.
inline BracketTable rw_so3_table(StForm form = StForm::corrected, Presentation pres = Presentation::eliminated) {
    BracketTable tb;
    tb.presentation = pres;
    tb.st_form = form;
    tb.gens = detail::classical_gens(pres);
    const detail::ClassicalSymbols sym{pres, tb.gens};
    const std::size_t n = tb.size();
    tb.entry.assign(n, std::vector<CPoly>(n, CPoly(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b) tb.entry[a][b] = detail::generic_rhs(sym, form, tb.gens[a], tb.gens[b]);
    return tb;
}

/// The so(3) part of the table only: the 3 x 3 {s_i, s_j} block.
inline bool ss_block_is_so3(const BracketTable& tb) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CPoly want(tb.size());
            for (int k = 0; k < 3; ++k)
                if (int e = eps0(i, j, k)) want += CPoly::variable(tb.size(), static_cast<std::size_t>(k), e);
            if (!(tb.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == want)) return false;
        }
    return true;
}

/// Bilinear Leibniz extension: {f, g} = sum_ab (df/dx_a)(dg/dx_b){x_a, x_b}.
inline CPoly poisson_bracket(const CPoly& f, const CPoly& g, const BracketTable& tb) {
    const std::size_t n = tb.size();
    CPoly out(n);
    std::vector<CPoly> dg(n);
    for (std::size_t b = 0; b < n; ++b) dg[b] = g.derivative(b);
    for (std::size_t a = 0; a < n; ++a) {
        const CPoly fa = f.derivative(a);
        if (fa.is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || dg[b].is_zero() || tb.entry[a][b].is_zero()) continue;
            out += fa * dg[b] * tb.entry[a][b];
        }
    }
    return out;
}

struct JacobiResidual {
    std::array<std::size_t, 3> triple;
    CPoly residual;
};

struct JacobiReport {
    std::size_t triples_checked = 0;
    std::vector<JacobiResidual> failures;  ///< nonzero residuals only

    bool passed() const noexcept { return failures.empty(); }
};

inline CPoly jacobi_residual(const BracketTable& tb, std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t n = tb.size();
    const CPoly x = CPoly::variable(n, a), y = CPoly::variable(n, b), z = CPoly::variable(n, c);
    return poisson_bracket(x, tb.entry[b][c], tb) + poisson_bracket(y, tb.entry[c][a], tb) +
           poisson_bracket(z, tb.entry[a][b], tb);
}

/// Jacobi residual for every unordered triple of distinct generators.
inline JacobiReport jacobi_report(const BracketTable& tb) {
    JacobiReport rep;
    const std::size_t n = tb.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                ++rep.triples_checked;
                CPoly r = jacobi_residual(tb, a, b, c);
                if (!r.is_zero()) rep.failures.push_back({{a, b, c}, std::move(r)});
            }
    return rep;
}

/// Counts failures by generator kinds, e.g. "stt" -> 8.
inline std::map<std::string, std::size_t> failure_kinds(const BracketTable& tb, const JacobiReport& rep) {
    std::map<std::string, std::size_t> out;
    for (const auto& f : rep.failures) {
        std::string k;
        for (auto g : f.triple) k += tb.gens[g].kind == CGen::Kind::s ? 's' : 't';
        ++out[k];
    }
    return out;
}

/// Does substituting t33 = -t11 - t22 commute with bracketing? For each
/// generator x, compares the formula value of {x, t33} (then substituted)
/// against -{x, t11} - {x, t22} from the eliminated table.
struct EliminationConsistency {
    std::vector<std::pair<std::string, CPoly>> mismatches;  ///< generator name, difference
    bool consistent() const noexcept { return mismatches.empty(); }
};

inline EliminationConsistency elimination_consistency(StForm form) {
    const auto tb = rw_so3_table(form, Presentation::eliminated);
    const detail::ClassicalSymbols sym{Presentation::eliminated, tb.gens};
    const CGen t33{CGen::Kind::t, 2, 2};
    EliminationConsistency out;
    for (std::size_t a = 0; a < tb.size(); ++a) {
        const CPoly direct = detail::generic_rhs(sym, form, tb.gens[a], t33);
        CPoly via(tb.size());
        for (std::size_t b : {std::size_t{3}, std::size_t{4}})
            if (a != b) via -= tb.entry[a][b];
        CPoly d = direct - via;
        if (!d.is_zero()) out.mismatches.emplace_back(tb.gens[a].name(), std::move(d));
    }
    return out;
}

/// Each entry homogeneous of degree deg(a) + deg(b) - 1 with
/// deg(s) = 1, deg(t) = 2.
inline bool grading_ok(const BracketTable& tb) {
    const auto w = tb.weights();
    for (std::size_t a = 0; a < tb.size(); ++a)
        for (std::size_t b = 0; b < tb.size(); ++b) {
            if (tb.entry[a][b].is_zero()) continue;
            const auto d = tb.entry[a][b].weighted_degrees(w);
            if (d.size() != 1 || d[0] != w[a] + w[b] - 1) return false;
        }
    return true;
}

inline bool antisymmetric(const BracketTable& tb) {
    for (std::size_t a = 0; a < tb.size(); ++a)
        for (std::size_t b = 0; b < tb.size(); ++b)
            if (!(tb.entry[a][b] + tb.entry[b][a]).is_zero()) return false;
    return true;
}

}  // namespace skrw

#endif  // SKRW_CLASSICAL_HPP
