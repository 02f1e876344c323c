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

#ifndef SKRW_NCPOLY_HPP
#define SKRW_NCPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "classical.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "rational.hpp"

namespace skrw {

/// A word over a small ordered alphabet; each char is a letter index.
using Word = std::string;

inline Word make_word(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.push_back(static_cast<char>(l));
    return w;
}
inline int letter(const Word& w, std::size_t i) { return static_cast<unsigned char>(w[i]); }

/// Graded lexicographic order: shorter words first, then letterwise.
struct GradedLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
    }
};

/// Non-decreasing letters: a normal-form (PBW-ordered) word.
inline bool is_ordered(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (letter(w, i) > letter(w, i + 1)) return false;
    return true;
}

/// Noncommutative polynomial with coefficients in C.
template <class C>
class NCPoly {
public:
    using Terms = std::map<Word, C, GradedLess>;

    NCPoly() = default;

    static NCPoly constant(const C& c) { return term(Word{}, c); }
    static NCPoly gen(int l, const C& c = C(1)) { return term(Word(1, static_cast<char>(l)), c); }
    static NCPoly term(const Word& w, const C& c) {
        NCPoly p;
        p.add_term(w, c);
        return p;
    }

    const Terms& terms() const noexcept { return t_; }
    bool is_zero() const noexcept { return t_.empty(); }
    std::size_t size() const noexcept { return t_.size(); }
    std::size_t degree() const noexcept { return t_.empty() ? 0 : t_.rbegin()->first.size(); }
    const Word& leading_word() const { return t_.rbegin()->first; }

    C coefficient(const Word& w) const {
        auto it = t_.find(w);
        return it == t_.end() ? C(0) : it->second;
    }

    void add_term(const Word& w, const C& c) {
        using skrw::is_zero;
        if (is_zero(c)) return;
        auto [it, fresh] = t_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) t_.erase(it);
        }
    }
    /// this += f * p
    void add_scaled(const NCPoly& p, const C& f) {
        using skrw::is_zero;
        if (is_zero(f)) return;
        for (const auto& [w, c] : p.t_) add_term(w, c * f);
    }

    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& [w, c] : o.t_) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& [w, c] : o.t_) add_term(w, -c);
        return *this;
    }
    NCPoly& operator*=(const C& s) {
        using skrw::is_zero;
        Terms out;
        for (auto& [w, c] : t_) {
            C v = c * s;
            if (!is_zero(v)) out.emplace(w, std::move(v));
        }
        t_ = std::move(out);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator-(NCPoly a) { return a *= C(-1); }
    friend NCPoly operator*(NCPoly a, const C& s) { return a *= s; }
    friend NCPoly operator*(const C& s, NCPoly a) { return a *= s; }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly out;
        for (const auto& [wa, ca] : a.t_)
            for (const auto& [wb, cb] : b.t_) out.add_term(wa + wb, ca * cb);
        return out;
    }
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.t_ == b.t_; }

    template <class D, class F>
    NCPoly<D> map_coefficients(F&& f) const {
        NCPoly<D> out;
        for (const auto& [w, c] : t_) out.add_term(w, f(c));
        return out;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : t_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << skrw::to_string(c) << ")";
            for (std::size_t i = 0; i < w.size(); ++i) os << "*" << names[static_cast<std::size_t>(letter(w, i))];
        }
        return os.str();
    }

private:
    Terms t_;
};

/// Commutator brackets [x_a, x_b] of every pair of letters.
template <class C>
class NCTable {
public:
    NCTable() = default;
    explicit NCTable(std::vector<std::string> names)
        : names_(std::move(names)), br_(names_.size(), std::vector<NCPoly<C>>(names_.size())) {}

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    int index(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) throw Error(ErrorKind::missing_table_entry, "unknown generator " + name);
        return static_cast<int>(it - names_.begin());
    }

    const NCPoly<C>& operator()(int a, int b) const { return br_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    /// Sets [x_a, x_b] = p and [x_b, x_a] = -p.
    void set(int a, int b, const NCPoly<C>& p) {
        br_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = p;
        br_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = -p;
    }

    bool antisymmetric() const {
        for (std::size_t a = 0; a < size(); ++a) {
            if (!br_[a][a].is_zero()) return false;
            for (std::size_t b = 0; b < size(); ++b)
                if (!(br_[a][b] + br_[b][a]).is_zero()) return false;
        }
        return true;
    }

    template <class D, class F>
    NCTable<D> map_coefficients(F&& f) const {
        NCTable<D> out(names_);
        for (int a = 0; a < static_cast<int>(size()); ++a)
            for (int b = a + 1; b < static_cast<int>(size()); ++b) out.set(a, b, (*this)(a, b).template map_coefficients<D>(f));
        return out;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<NCPoly<C>>> br_;
};

/// One rule x_b x_a -> (ordered polynomial) for every pair b > a. The
/// degree-2 relations x_b x_a - x_a x_b = [x_b, x_a] are solved jointly
/// for all out-of-order words, so each replacement contains ordered words
/// only even when a bracket mentions another out-of-order word.
template <class C>
class RewriteSystem {
public:
    RewriteSystem() = default;

    static RewriteSystem build(const NCTable<C>& table, std::size_t degree_cap = 3) {
        RewriteSystem rs;
        rs.names_ = table.names();
        rs.cap_ = degree_cap;
        const int n = static_cast<int>(table.size());
        std::map<Word, std::size_t> unknown;
        std::vector<Word> words;
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < b; ++a) {
                unknown.emplace(make_word({b, a}), words.size());
                words.push_back(make_word({b, a}));
            }
        const std::size_t k = words.size();
        std::vector<std::vector<C>> m(k, std::vector<C>(k, C(0)));
        std::vector<NCPoly<C>> rhs(k);
        for (std::size_t r = 0; r < k; ++r) {
            const int b = letter(words[r], 0), a = letter(words[r], 1);
            m[r][r] += C(1);
            rhs[r].add_term(make_word({a, b}), C(1));
            for (const auto& [w, c] : table(b, a).terms()) {
                if (w.size() > 2) throw Error(ErrorKind::shape_violation, "bracket of degree > 2 in " + rs.names_[static_cast<std::size_t>(b)] + ", " + rs.names_[static_cast<std::size_t>(a)]);
                if (w.size() == 2 && !is_ordered(w))
                    m[r][unknown.at(w)] -= c;
                else
                    rhs[r].add_term(w, c);
            }
        }
        // Gauss-Jordan with polynomial right-hand sides.
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t p = col;
            while (p < k && !is_unit(m[p][col])) ++p;
            if (p == k)
                throw Error(ErrorKind::singular_operator,
                            "degree-2 relations do not determine a rule for " + rs.word_name(words[col]));
            std::swap(m[p], m[col]);
            std::swap(rhs[p], rhs[col]);
            const C inv = C(1) / m[col][col];
            for (auto& x : m[col]) x *= inv;
            rhs[col] *= inv;
            for (std::size_t r = 0; r < k; ++r) {
                if (r == col || is_zero(m[r][col])) continue;
                const C f = m[r][col];
                for (std::size_t j = col; j < k; ++j)
                    if (!is_zero(m[col][j])) m[r][j] -= f * m[col][j];
                rhs[r].add_scaled(rhs[col], -f);
            }
        }
        rs.rules_.resize(static_cast<std::size_t>(n * n));
        for (std::size_t r = 0; r < k; ++r) rs.rules_[rs.slot(letter(words[r], 0), letter(words[r], 1))] = std::move(rhs[r]);
        return rs;
    }

    std::size_t alphabet_size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t degree_cap() const noexcept { return cap_; }

    /// Replacement for x_b x_a, b > a.
    const NCPoly<C>& rule(int b, int a) const { return rules_[slot(b, a)]; }

    /// Rules whose replacement contains a word not below x_b x_a in graded-lex.
    std::vector<Word> non_decreasing_rules() const {
        std::vector<Word> out;
        const int n = static_cast<int>(names_.size());
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < b; ++a) {
                const Word lhs = make_word({b, a});
                for (const auto& [w, c] : rule(b, a).terms())
                    if (!GradedLess{}(w, lhs)) {
                        out.push_back(lhs);
                        break;
                    }
            }
        return out;
    }

    std::string word_name(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + names_[static_cast<std::size_t>(letter(w, i))];
        return s;
    }

private:
    std::size_t slot(int b, int a) const { return static_cast<std::size_t>(b) * names_.size() + static_cast<std::size_t>(a); }

    std::vector<std::string> names_;
    std::size_t cap_ = 3;
    std::vector<NCPoly<C>> rules_;
};

/// Normal-form reducer: leftmost inversion first, memoized per word.
/// A word that reappears while it is being reduced is reported as
/// non-terminating rather than looping.
template <class C>
class Reducer {
public:
    explicit Reducer(const RewriteSystem<C>& rs) : rs_(&rs) {}

    NCPoly<C> normal_form(const NCPoly<C>& p) {
        NCPoly<C> out;
        for (const auto& [w, c] : p.terms()) out.add_scaled(word(w), c);
        return out;
    }

    /// One rewrite of the out-of-order pair at position i, no further reduction.
    NCPoly<C> rewrite_at(const Word& w, std::size_t i) const {
        const int b = letter(w, i), a = letter(w, i + 1);
        if (b <= a) throw Error(ErrorKind::precondition, "no rule applies at this position");
        const Word pre = w.substr(0, i), post = w.substr(i + 2);
        NCPoly<C> out;
        for (const auto& [v, c] : rs_->rule(b, a).terms()) out.add_term(pre + v + post, c);
        return out;
    }

    const NCPoly<C>& word(const Word& w) {
        if (w.size() > rs_->degree_cap())
            throw Error(ErrorKind::degree_cap, "word of degree " + std::to_string(w.size()) + " exceeds the degree cap " +
                                                   std::to_string(rs_->degree_cap()) + ": " + rs_->word_name(w));
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        if (is_ordered(w)) return memo_.emplace(w, NCPoly<C>::term(w, C(1))).first->second;
        if (!active_.insert(w).second)
            throw Error(ErrorKind::non_terminating, "reduction cycles through " + rs_->word_name(w));
        std::size_t i = 0;
        while (letter(w, i) <= letter(w, i + 1)) ++i;
        const NCPoly<C> step = rewrite_at(w, i);
        NCPoly<C> out;
        for (const auto& [v, c] : step.terms()) out.add_scaled(word(v), c);
        active_.erase(w);
        return memo_.emplace(w, std::move(out)).first->second;
    }

private:
    const RewriteSystem<C>* rs_;
    std::map<Word, NCPoly<C>, GradedLess> memo_;
    std::set<Word> active_;
};

template <class C>
NCPoly<C> normal_form(const NCPoly<C>& p, const RewriteSystem<C>& rs) {
    Reducer<C> r(rs);
    return r.normal_form(p);
}

/// Bracket [p, x_z] expanded by the derivation rule
/// [x_1 ... x_n, z] = sum_i x_1 ... [x_i, z] ... x_n.
template <class C>
NCPoly<C> bracket_with(const NCPoly<C>& p, int z, const NCTable<C>& table) {
    NCPoly<C> out;
    for (const auto& [w, c] : p.terms())
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto& b = table(letter(w, i), z);
            if (b.is_zero()) continue;
            const NCPoly<C> pre = NCPoly<C>::term(w.substr(0, i), C(1));
            const NCPoly<C> post = NCPoly<C>::term(w.substr(i + 1), C(1));
            out.add_scaled(pre * b * post, c);
        }
    return out;
}

/// [[a,b],c] + [[b,c],a] + [[c,a],b], reduced to normal form.
template <class C>
NCPoly<C> formal_jacobi(const NCTable<C>& table, Reducer<C>& reducer, int a, int b, int c) {
    NCPoly<C> r = bracket_with(table(a, b), c, table);
    r += bracket_with(table(b, c), a, table);
    r += bracket_with(table(c, a), b, table);
    return reducer.normal_form(r);
}

struct Overlap {
    Word word;
    std::string left, right, difference;  ///< rendered polynomials
};

/// Degree-3 overlap ambiguities x_c x_b x_a, c > b > a.
struct OverlapReport {
    std::size_t checked = 0;
    std::vector<Overlap> failures;
    std::string error;  ///< set when reduction itself could not complete

    bool passed() const noexcept { return error.empty() && failures.empty(); }
};

template <class C>
OverlapReport diamond_check(const RewriteSystem<C>& rs) {
    OverlapReport rep;
    Reducer<C> red(rs);
    const int n = static_cast<int>(rs.alphabet_size());
    try {
        for (int c = 0; c < n; ++c)
            for (int b = 0; b < c; ++b)
                for (int a = 0; a < b; ++a) {
                    const Word w = make_word({c, b, a});
                    ++rep.checked;
                    const NCPoly<C> left = red.normal_form(red.rewrite_at(w, 0));
                    const NCPoly<C> right = red.normal_form(red.rewrite_at(w, 1));
                    if (!(left == right))
                        rep.failures.push_back({w, left.to_string(rs.names()), right.to_string(rs.names()),
                                                (left - right).to_string(rs.names())});
                }
    } catch (const Error& e) {
        rep.error = e.what();
    }
    return rep;
}

/// Average of a commutative monomial over all orderings of its letters.
inline NCPoly<Rat> weyl_symmetrize(Word letters, std::size_t degree_cap = 3) {
    if (letters.size() > degree_cap)
        throw Error(ErrorKind::degree_cap, "monomial degree " + std::to_string(letters.size()) + " exceeds the degree cap");
    std::sort(letters.begin(), letters.end(),
              [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
    std::vector<Word> perms;
    do perms.push_back(letters);
    while (std::next_permutation(letters.begin(), letters.end(),
                                 [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); }));
    NCPoly<Rat> out;
    const Rat c(1, static_cast<long>(perms.size()));
    for (const auto& p : perms) out.add_term(p, c);
    return out;
}

/// Letter multiset of a commutative monomial, in variable order.
inline Word monomial_letters(const CMonomial& m) {
    Word w;
    for (std::size_t v = 0; v < m.size(); ++v) w.append(m[v], static_cast<char>(v));
    return w;
}

/// How a commutative right-hand side is turned into words.
enum class Ordering { left, right, weyl };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::left: return "left";
        case Ordering::right: return "right";
        case Ordering::weyl: return "weyl";
    }
    return "?";
}

/// Lifts a commutative polynomial to words. `left` puts letters in
/// increasing order, `right` in decreasing order, `weyl` symmetrizes.
inline NCPoly<Rat> lift(const CPoly& p, Ordering o) {
    NCPoly<Rat> out;
    for (const auto& [m, c] : p.terms()) {
        Word w = monomial_letters(m);
        if (o == Ordering::weyl) {
            out.add_scaled(weyl_symmetrize(w, w.size()), c);
            continue;
        }
        if (o == Ordering::right) std::reverse(w.begin(), w.end());
        out.add_term(w, c);
    }
    return out;
}

struct OrderingEntry {
    std::string pair;
    bool agree = false;
    std::array<std::string, 3> normal_forms;  ///< left, right, weyl
};

struct OrderingReport {
    std::vector<OrderingEntry> entries;
    bool passed() const {
        for (const auto& e : entries)
            if (!e.agree) return false;
        return true;
    }
};

/// Reduces the left, right and Weyl lifts of each right-hand side and
/// compares the normal forms.
inline OrderingReport ordering_independence_check(const RewriteSystem<Rat>& rs,
                                                  const std::vector<std::pair<std::string, CPoly>>& rhs) {
    OrderingReport rep;
    Reducer<Rat> red(rs);
    for (const auto& [name, p] : rhs) {
        OrderingEntry e;
        e.pair = name;
        std::array<NCPoly<Rat>, 3> nf;
        std::size_t k = 0;
        for (Ordering o : {Ordering::left, Ordering::right, Ordering::weyl}) {
            nf[k] = red.normal_form(lift(p, o));
            e.normal_forms[k] = nf[k].to_string(rs.names());
            ++k;
        }
        e.agree = nf[0] == nf[1] && nf[1] == nf[2];
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

/// U(so(3)): [e_i, e_j] = eps_ijk e_k.
inline NCTable<Rat> u_so3_table() {
    NCTable<Rat> t({"e1", "e2", "e3"});
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            NCPoly<Rat> p;
            for (int k = 0; k < 3; ++k)
                if (int e = eps0(i, j, k)) p.add_term(Word(1, static_cast<char>(k)), Rat(e));
            t.set(i, j, p);
        }
    return t;
}

/// Quantization of a classical table: each right-hand side lifted with the
/// given ordering. Letters follow the classical generator order.
inline NCTable<Rat> quantize(const BracketTable& tb, Ordering o = Ordering::weyl) {
    NCTable<Rat> t(tb.names());
    for (std::size_t a = 0; a < tb.size(); ++a)
        for (std::size_t b = a + 1; b < tb.size(); ++b) t.set(static_cast<int>(a), static_cast<int>(b), lift(tb.entry[a][b], o));
    return t;
}

}  // namespace skrw

#endif  // SKRW_NCPOLY_HPP
