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

#ifndef SKRW_DISCOVERY_HPP
#define SKRW_DISCOVERY_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jet.hpp"
#include "linalg.hpp"
#include "ncpoly.hpp"
#include "sklyanin.hpp"

namespace skrw {

// ---------------------------------------------------------------------------
// T system: six symmetric T_jk with
// [S_i, T_jk] = sum_l eps_ijl p(Q) T_lk + eps_ikl p(Q) T_jl.

/// Pair (j, k) of T_jk in storage order 11, 22, 33, 12, 13, 23.
inline std::size_t pair_index(int j, int k) {
    if (j > k) std::swap(j, k);
    for (std::size_t n = 0; n < 6; ++n)
        if (kQuadPairs[n].first == j && kQuadPairs[n].second == k) return n;
    throw std::out_of_range("pair_index");
}

inline std::string pair_name(std::size_t n) {
    return std::to_string(kQuadPairs[n].first + 1) + std::to_string(kQuadPairs[n].second + 1);
}

using TMatrices = std::array<Mat3, 6>;

inline TMatrices t_from_vector(const RatVector& x) {
    TMatrices t;
    for (std::size_t n = 0; n < 6; ++n) t[n] = from_sym_coords(x, 6 * n);
    return t;
}

/// The 18 residual matrices of the T relations, indexed 6 * i + pair.
inline std::vector<Mat3> lemma1_residuals(const STriple& s, const Mat3& q, const TMatrices& t) {
    const PofQ p(q);
    std::vector<Mat3> out;
    for (int i = 0; i < 3; ++i)
        for (std::size_t n = 0; n < 6; ++n) {
            const auto [j, k] = kQuadPairs[n];
            Mat3 r = commutator(s[static_cast<std::size_t>(i)], t[n]);
            for (int l = 0; l < 3; ++l) {
                if (int e = eps0(i, j, l)) r -= p.apply(t[pair_index(l, k)]) * Rat(e);
                if (int e = eps0(i, k, l)) r -= p.apply(t[pair_index(j, l)]) * Rat(e);
            }
            out.push_back(std::move(r));
        }
    return out;
}

/// Traceless coordinates: the off-diagonal T_12, T_13, T_23 and the
/// differences T_11 - T_22, T_22 - T_33, flattened (30 numbers).
inline RatVector traceless_part(const TMatrices& t) {
    RatVector v;
    auto push = [&](const Mat3& m) {
        for (const auto& x : m.sym_coords()) v.push_back(x);
    };
    push(t[3]);
    push(t[4]);
    push(t[5]);
    push(t[0] - t[1]);
    push(t[1] - t[2]);
    return v;
}

inline Mat3 trace_part(const TMatrices& t) { return t[0] + t[1] + t[2]; }

/// The selected T-family with its normalization data.
struct TFamily {
    TMatrices t;
    Rat kappa;  ///< T_11 + T_22 + T_33 = kappa * Q
    std::size_t kernel_dimension = 0;
    std::string normalization;

    /// T~_jk = T_jk - delta_jk (kappa / 3) Q, in generator order
    /// T11, T22, T12, T13, T23.
    std::array<Mat3, 5> traceless_generators(const Mat3& q) const {
        const Mat3 shift = q * Rat(kappa / 3);
        return {t[0] - shift, t[1] - shift, t[3], t[4], t[5]};
    }
    TFamily scaled(const Rat& mu) const {
        TFamily f = *this;
        for (auto& m : f.t) m *= mu;
        f.kappa *= mu;
        return f;
    }
};

struct Lemma1Result {
    std::vector<RatVector> kernel;
    std::size_t traceless_rank = 0;                   ///< rank of the traceless part over the kernel
    bool unique_up_to_multiple = false;               ///< traceless_rank == 1
    bool trace_proportional_to_q = false;             ///< some element has sum T_mm = kappa Q, kappa != 0
    std::optional<bool> candidate_in_span;            ///< S_j S_k + S_k S_j solves the system (diagonal point)
    bool trace_commutes_with_q = false;
    std::optional<TFamily> family;
    std::optional<bool> pairwise_q_orthogonal;        ///< tr(T_a Q T_b + T_b Q T_a) = 0, a != b
    std::optional<bool> mixed_q_orthogonal;           ///< tr(S_i Q T_jk + T_jk Q S_i) = 0

    bool claims_hold() const { return !kernel.empty() && unique_up_to_multiple && trace_proportional_to_q; }
};

inline bool is_diagonal_point(const SklyaninRealization& r) {
    return r.q == Mat3::identity() * r.q(0, 0);
}

inline Lemma1Result solve_lemma1(const STriple& s, const Mat3& q) {
    // Columns: residuals of unit vectors (the system is homogeneous).
    RatMatrix a(162, 36);
    for (std::size_t u = 0; u < 36; ++u) {
        RatVector x(36);
        x[u] = 1;
        const auto res = lemma1_residuals(s, q, t_from_vector(x));
        for (std::size_t m = 0; m < res.size(); ++m)
            for (std::size_t e = 0; e < 9; ++e) a(9 * m + e, u) = res[m].entries()[e];
    }
    Lemma1Result out;
    out.kernel = nullspace(a);
    if (out.kernel.empty()) return out;

    // Traceless parts across the kernel.
    const std::size_t kd = out.kernel.size();
    RatMatrix tl(30, kd);
    std::vector<RatVector> tls;
    for (std::size_t b = 0; b < kd; ++b) {
        tls.push_back(traceless_part(t_from_vector(out.kernel[b])));
        for (std::size_t r = 0; r < 30; ++r) tl(r, b) = tls[b][r];
    }
    out.traceless_rank = kd - nullspace(tl).size();
    out.unique_up_to_multiple = out.traceless_rank == 1;

    // x in kernel with sum T_mm(x) = kappa Q: unknowns (x_1..x_kd, kappa).
    RatMatrix tr(9, kd + 1);
    for (std::size_t b = 0; b < kd; ++b) {
        const Mat3 m = trace_part(t_from_vector(out.kernel[b]));
        for (std::size_t e = 0; e < 9; ++e) tr(e, b) = m.entries()[e];
    }
    for (std::size_t e = 0; e < 9; ++e) tr(e, kd) = -q.entries()[e];
    const auto trk = nullspace(tr);
    for (const auto& v : trk)
        if (!is_zero(v[kd])) out.trace_proportional_to_q = true;

    if (is_zero(q(0, 1)) && is_zero(q(0, 2)) && is_zero(q(1, 2)) && q(0, 0) == q(1, 1) && q(1, 1) == q(2, 2)) {
        TMatrices cand;
        for (std::size_t n = 0; n < 6; ++n)
            cand[n] = anticommutator(s[static_cast<std::size_t>(kQuadPairs[n].first)], s[static_cast<std::size_t>(kQuadPairs[n].second)]);
        bool ok = true;
        for (const auto& m : lemma1_residuals(s, q, cand)) ok = ok && m.is_zero();
        out.candidate_in_span = ok;
    }

    // Family: first kernel vector with a nonzero traceless part, plus the
    // pure-trace combination that makes the trace part kappa Q.
    std::optional<std::size_t> lead;
    for (std::size_t b = 0; b < kd && !lead; ++b)
        for (const auto& x : tls[b])
            if (!is_zero(x)) {
                lead = b;
                break;
            }
    if (!lead || !out.trace_proportional_to_q) return out;

    RatVector x = out.kernel[*lead];
    Rat first;
    for (const auto& v : tls[*lead])
        if (!is_zero(v)) {
            first = v;
            break;
        }
    for (auto& c : x) c /= first;
    // Pure-trace kernel directions: combinations with zero traceless part.
    const auto pure = nullspace(tl);
    std::vector<RatVector> pure_vecs;
    for (const auto& y : pure) {
        RatVector v(36);
        for (std::size_t b = 0; b < kd; ++b)
            if (!is_zero(y[b]))
                for (std::size_t u = 0; u < 36; ++u) v[u] += y[b] * out.kernel[b][u];
        pure_vecs.push_back(std::move(v));
    }
    // trace(x) + sum_w y_w trace(w) - kappa Q = 0 with kappa = 1 fixed.
    RatMatrix sys(9, pure_vecs.size());
    RatVector rhs(9);
    const Mat3 tx = trace_part(t_from_vector(x));
    for (std::size_t w = 0; w < pure_vecs.size(); ++w) {
        const Mat3 m = trace_part(t_from_vector(pure_vecs[w]));
        for (std::size_t e = 0; e < 9; ++e) sys(e, w) = m.entries()[e];
    }
    std::optional<Rat> kappa;
    // First try keeping the traceless representative's own trace.
    if (auto e = express_in_span(tx, {q}); e.found() && e.kernel.empty() && !is_zero((*e.coefficients)[0])) {
        kappa = (*e.coefficients)[0];
    } else if (!pure_vecs.empty()) {
        for (std::size_t e = 0; e < 9; ++e) rhs[e] = q.entries()[e] - tx.entries()[e];
        const auto res = solve_linear(sys, rhs);
        if (res.consistent()) {
            for (std::size_t w = 0; w < pure_vecs.size(); ++w)
                for (std::size_t u = 0; u < 36; ++u) x[u] += (*res.particular)[w] * pure_vecs[w][u];
            kappa = Rat(1);
        }
    }
    if (!kappa) return out;

    TFamily fam;
    fam.t = t_from_vector(x);
    fam.kappa = *kappa;
    fam.kernel_dimension = kd;
    fam.normalization = "first nonzero traceless coordinate = 1";
    out.trace_commutes_with_q = commutator(q, trace_part(fam.t)).is_zero();

    bool pw = true, mx = true;
    for (std::size_t a2 = 0; a2 < 6; ++a2) {
        for (std::size_t b = a2 + 1; b < 6; ++b) pw = pw && is_zero(q_form(q, fam.t[a2], fam.t[b]));
        for (const auto& si : s) mx = mx && is_zero(q_form(q, si, fam.t[a2]));
    }
    out.pairwise_q_orthogonal = pw;
    out.mixed_q_orthogonal = mx;
    out.family = std::move(fam);
    return out;
}

// ---------------------------------------------------------------------------
// The formal presentation on Q < S1 < S2 < S3 < T11 < T22 < T12 < T13 < T23.

inline const std::vector<std::string>& skrw_letters() {
    static const std::vector<std::string> n{"Q", "S1", "S2", "S3", "T11", "T22", "T12", "T13", "T23"};
    return n;
}

constexpr int kLetterQ = 0;
constexpr int letter_s(int i) { return 1 + i; }
constexpr int letter_t(int g) { return 4 + g; }
inline bool is_t_letter(int l) { return l >= 4; }

/// T generator index (0..4) of the pair (j, k), or -1 for (3, 3).
inline int t_generator(int j, int k) {
    if (j > k) std::swap(j, k);
    constexpr int table[3][3] = {{0, 2, 3}, {2, 1, 4}, {3, 4, -1}};
    return table[j][k];
}

inline std::pair<int, int> t_generator_pair(int g) {
    constexpr std::array<std::pair<int, int>, 5> p{{{0, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 2}}};
    return p[static_cast<std::size_t>(g)];
}

constexpr std::size_t kXiPerGen = 18;
constexpr std::size_t kXiCount = 5 * kXiPerGen;
constexpr std::size_t kTtPerPair = 18;
constexpr std::size_t kTtPairs = 10;
constexpr std::size_t kTtCount = kTtPairs * kTtPerPair;

/// Position of the pair g < h among the 10 T-pairs.
inline std::size_t tt_pair_index(int g, int h) {
    std::size_t n = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b, ++n)
            if (a == g && b == h) return n;
    throw std::out_of_range("tt_pair_index");
}

/// Inputs of the formal table other than the unknown coefficients.
struct SkRwData {
    std::array<RatVector, 3> f;  ///< [Q, S_i] in the symmetrized S_j S_k basis
    Rat kappa;
};

template <class C>
NCPoly<C> letter_t_poly(int j, int k) {
    const int g = t_generator(j, k);
    if (g >= 0) return NCPoly<C>::gen(letter_t(g));
    return NCPoly<C>::gen(letter_t(0), C(-1)) + NCPoly<C>::gen(letter_t(1), C(-1));
}

/// x y + y x
template <class C>
NCPoly<C> sym_product(const NCPoly<C>& x, const NCPoly<C>& y) {
    return x * y + y * x;
}

/// Xi / [T,T] basis element: S_m T_c + T_c S_m for n < 15, else
/// S_m Q + Q S_m with m = n - 15.
template <class C>
NCPoly<C> ansatz_element(std::size_t n) {
    if (n < 15) return sym_product(NCPoly<C>::gen(letter_s(static_cast<int>(n / 5))), NCPoly<C>::gen(letter_t(static_cast<int>(n % 5))));
    return sym_product(NCPoly<C>::gen(letter_s(static_cast<int>(n - 15))), NCPoly<C>::gen(kLetterQ));
}

template <class C>
NCPoly<C> ansatz_sum(const std::vector<C>& coeffs, std::size_t offset) {
    NCPoly<C> out;
    for (std::size_t n = 0; n < 18; ++n)
        if (!is_zero(coeffs[offset + n])) out.add_scaled(ansatz_element<C>(n), coeffs[offset + n]);
    return out;
}

template <class C>
NCTable<C> skrw_table(const SkRwData& d, const std::vector<C>& xi, const std::vector<C>& tt) {
    using P = NCPoly<C>;
    NCTable<C> t(skrw_letters());
    const P q = P::gen(kLetterQ);
    auto s = [](int i) { return P::gen(letter_s(i)); };
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            P v;
            for (int k = 0; k < 3; ++k)
                if (int e = eps0(i, j, k)) v.add_scaled(sym_product(q, s(k)), C(e));
            t.set(letter_s(i), letter_s(j), v);
        }
    std::array<P, 3> f;
    for (int i = 0; i < 3; ++i) {
        for (std::size_t n = 0; n < 6; ++n)
            f[static_cast<std::size_t>(i)].add_scaled(sym_product(s(kQuadPairs[n].first), s(kQuadPairs[n].second)),
                                                     C(d.f[static_cast<std::size_t>(i)][n]));
        t.set(kLetterQ, letter_s(i), f[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < 3; ++i)
        for (int g = 0; g < 5; ++g) {
            const auto [j, k] = t_generator_pair(g);
            P v;
            for (int l = 0; l < 3; ++l) {
                if (int e = eps0(i, j, l)) v.add_scaled(sym_product(q, letter_t_poly<C>(l, k)), C(e));
                if (int e = eps0(i, k, l)) v.add_scaled(sym_product(q, letter_t_poly<C>(j, l)), C(e));
            }
            if (j == k) v.add_scaled(f[static_cast<std::size_t>(i)], C(Rat(d.kappa / 3)));
            t.set(letter_s(i), letter_t(g), v);
        }
    for (int g = 0; g < 5; ++g) t.set(kLetterQ, letter_t(g), ansatz_sum(xi, kXiPerGen * static_cast<std::size_t>(g)));
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) t.set(letter_t(g), letter_t(h), ansatz_sum(tt, kTtPerPair * tt_pair_index(g, h)));
    return t;
}

/// Matrices assigned to the nine letters.
inline std::vector<Mat3> letter_matrices(const SklyaninRealization& r, const TFamily& fam) {
    std::vector<Mat3> m{r.q, r.s[0], r.s[1], r.s[2]};
    for (const auto& t : fam.traceless_generators(r.q)) m.push_back(t);
    return m;
}

inline Mat3 evaluate(const NCPoly<Rat>& p, const std::vector<Mat3>& letters) {
    Mat3 out;
    for (const auto& [w, c] : p.terms()) {
        Mat3 m = Mat3::identity();
        for (std::size_t i = 0; i < w.size(); ++i) m = m * letters[static_cast<std::size_t>(letter(w, i))];
        out += m * c;
    }
    return out;
}

/// [X_a, X_b] - (table entry evaluated) for every pair a < b.
struct MatrixCheck {
    std::vector<std::pair<std::string, Mat3>> failures;
    bool passed() const noexcept { return failures.empty(); }
};

inline MatrixCheck matrix_check(const NCTable<Rat>& t, const std::vector<Mat3>& letters) {
    MatrixCheck out;
    for (int a = 0; a < static_cast<int>(t.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(t.size()); ++b) {
            const Mat3 r = commutator(letters[static_cast<std::size_t>(a)], letters[static_cast<std::size_t>(b)]) - evaluate(t(a, b), letters);
            if (!r.is_zero()) out.failures.emplace_back("[" + t.names()[static_cast<std::size_t>(a)] + ", " + t.names()[static_cast<std::size_t>(b)] + "]", r);
        }
    return out;
}

struct Triple {
    int a, b, c;
};

/// (Q, S_i, T_g) and (S_i, S_j, T_g).
inline std::vector<Triple> lemma2_triples() {
    std::vector<Triple> out;
    for (int i = 0; i < 3; ++i)
        for (int g = 0; g < 5; ++g) out.push_back({kLetterQ, letter_s(i), letter_t(g)});
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int g = 0; g < 5; ++g) out.push_back({letter_s(i), letter_s(j), letter_t(g)});
    return out;
}

/// (S_i, T_g, T_h) and (Q, T_g, T_h), g < h.
inline std::vector<Triple> tt_triples() {
    std::vector<Triple> out;
    for (int i = 0; i < 3; ++i)
        for (int g = 0; g < 5; ++g)
            for (int h = g + 1; h < 5; ++h) out.push_back({letter_s(i), letter_t(g), letter_t(h)});
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) out.push_back({kLetterQ, letter_t(g), letter_t(h)});
    return out;
}

/// All triples of distinct letters of the given kinds, as a family name.
inline std::vector<Triple> triples_of_family(const std::string& family) {
    auto kind = [](int l) { return l == kLetterQ ? 'Q' : (is_t_letter(l) ? 'T' : 'S'); };
    std::vector<Triple> out;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b)
            for (int c = b + 1; c < 9; ++c) {
                std::string k{kind(a), kind(b), kind(c)};
                if (k == family) out.push_back({a, b, c});
            }
    return out;
}

inline std::string triple_name(const Triple& t) {
    const auto& n = skrw_letters();
    return "(" + n[static_cast<std::size_t>(t.a)] + ", " + n[static_cast<std::size_t>(t.b)] + ", " + n[static_cast<std::size_t>(t.c)] + ")";
}

struct JacobiFailure {
    std::string triple;
    std::string residual;
};

inline std::vector<JacobiFailure> formal_jacobi_failures(const NCTable<Rat>& t, const RewriteSystem<Rat>& rs,
                                                         const std::vector<Triple>& triples) {
    Reducer<Rat> red(rs);
    std::vector<JacobiFailure> out;
    for (const auto& tr : triples) {
        try {
            const auto r = formal_jacobi(t, red, tr.a, tr.b, tr.c);
            if (!r.is_zero()) out.push_back({triple_name(tr), r.to_string(rs.names())});
        } catch (const Error& e) {
            out.push_back({triple_name(tr), std::string("reduction error: ") + e.what()});
        }
    }
    return out;
}

namespace detail {

/// Adds every coefficient of a jet-valued residual as an equation in the
/// step delta: value + grad . delta = 0.
inline void add_jet_equations(const NCPoly<Jet>& r, SparseSystem& sys, std::size_t offset_unknowns = 0) {
    for (const auto& [w, c] : r.terms()) {
        SparseSystem::Row row;
        for (const auto& [i, d] : c.grad()) row[i - offset_unknowns] = d;
        sys.add_equation(std::move(row), -c.value());
    }
}

inline std::vector<Jet> jets_at(const RatVector& base, std::uint32_t first_index) {
    std::vector<Jet> out;
    for (std::size_t u = 0; u < base.size(); ++u) out.push_back(Jet::variable(first_index + static_cast<std::uint32_t>(u), base[u]));
    return out;
}

inline std::vector<Jet> constant_jets(const RatVector& v) { return std::vector<Jet>(v.begin(), v.end()); }

inline std::size_t kernel_dim(const SparseSystem& s) { return s.unknowns() - s.solve().rank; }

}  // namespace detail

struct Lemma2Result {
    RatVector xi;
    int iterations = 0;
    bool converged = false;
    std::size_t formal_kernel_dimension = 0;    ///< Jacobian of the formal equations at the solution
    std::size_t combined_kernel_dimension = 0;  ///< formal plus matrix equations
    std::vector<JacobiFailure> residual_failures;
    MatrixCheck matrix;
    bool trace_consistency = false;  ///< [Q, T_11 + T_22 + T_33] = 0 as matrices

    bool ok() const { return converged && residual_failures.empty() && matrix.passed(); }
};

/// Solves for Xi by Newton steps on the jet-linearized formal Jacobi
/// equations together with the matrix equations Xi(T) = [Q, T]. The formal
/// equations are not affine in Xi because the degree-2 rules for T Q and
/// T S are coupled, so the step is iterated until the exact residual
/// vanishes.
inline Lemma2Result solve_lemma2(const SklyaninRealization& r, const TFamily& fam, const SkRwData& d, std::size_t degree_cap = 3,
                                 int max_iterations = 8, RatVector start = {}) {
    Lemma2Result out;
    const auto letters = letter_matrices(r, fam);
    const auto triples = lemma2_triples();
    RatVector xi = start.empty() ? RatVector(kXiCount) : std::move(start);
    const std::vector<Jet> tt0(kTtCount, Jet(0));

    // Matrix equations: sum_n xi_{g,n} M_n = [Q, T_g].
    std::vector<std::pair<SparseSystem::Row, Rat>> matrix_eqs;
    for (int g = 0; g < 5; ++g) {
        const Mat3 target = commutator(r.q, letters[static_cast<std::size_t>(letter_t(g))]);
        std::array<Mat3, 18> basis;
        for (std::size_t n = 0; n < 18; ++n) basis[n] = evaluate(ansatz_element<Rat>(n), letters);
        for (std::size_t e = 0; e < 9; ++e) {
            SparseSystem::Row row;
            for (std::size_t n = 0; n < 18; ++n)
                if (!is_zero(basis[n].entries()[e])) row[kXiPerGen * static_cast<std::size_t>(g) + n] = basis[n].entries()[e];
            matrix_eqs.emplace_back(std::move(row), target.entries()[e]);
        }
    }

    for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
        const auto tab = skrw_table<Jet>(d, detail::jets_at(xi, 0), tt0);
        const auto rs = RewriteSystem<Jet>::build(tab, degree_cap);
        Reducer<Jet> red(rs);
        SparseSystem formal(kXiCount), combined(kXiCount);
        bool zero = true;
        for (const auto& tr : triples) {
            const auto res = formal_jacobi(tab, red, tr.a, tr.b, tr.c);
            for (const auto& [w, c] : res.terms()) zero = zero && is_zero(c.value());
            detail::add_jet_equations(res, formal);
            detail::add_jet_equations(res, combined);
        }
        for (const auto& [row, rhs] : matrix_eqs) {
            Rat at = rhs;
            for (const auto& [u, c] : row) at -= c * xi[u];
            if (!is_zero(at)) zero = false;
            combined.add_equation(row, at);
        }
        if (zero) {
            out.converged = true;
            out.formal_kernel_dimension = detail::kernel_dim(formal);
            out.combined_kernel_dimension = detail::kernel_dim(combined);
            break;
        }
        if (!combined.consistent())
            throw Error(ErrorKind::inconsistent_system, "the linearized Xi system is inconsistent at iteration " + std::to_string(out.iterations));
        const auto step = combined.solve();
        for (std::size_t u = 0; u < kXiCount; ++u) xi[u] += (*step.particular)[u];
    }
    out.xi = xi;

    const auto tab = skrw_table<Rat>(d, xi, RatVector(kTtCount));
    const auto rs = RewriteSystem<Rat>::build(tab, degree_cap);
    out.residual_failures = formal_jacobi_failures(tab, rs, triples);
    NCTable<Rat> qt(skrw_letters());
    for (int g = 0; g < 5; ++g) qt.set(kLetterQ, letter_t(g), tab(kLetterQ, letter_t(g)));
    for (auto& f : matrix_check(qt, letters).failures)
        if (f.first.rfind("[Q, T", 0) == 0) out.matrix.failures.push_back(std::move(f));
    out.trace_consistency = commutator(r.q, trace_part(fam.t)).is_zero();
    if (!out.converged) out.iterations = max_iterations;
    return out;
}

struct TTResult {
    RatVector c;
    std::vector<RatVector> kernel;  ///< solution-set directions within the declared form
    std::size_t formal_kernel_dimension = 0;  ///< formal Jacobi equations alone
    std::size_t full_kernel_dimension = 0;    ///< formal plus matrix equations, Q S terms allowed
    bool declared_form_consistent = true;     ///< a solution without Q S terms exists
    std::vector<JacobiFailure> residual_failures;
    MatrixCheck matrix;
    long truncations = 0;

    bool unique() const noexcept { return kernel.empty(); }
    bool ok() const { return residual_failures.empty() && matrix.passed(); }
};

/// The matrix equations [T_g, T_h] = sum c (S_m T_c + T_c S_m) + d (S_m Q + Q S_m).
inline std::vector<std::pair<SparseSystem::Row, Rat>> tt_matrix_equations(const std::vector<Mat3>& letters) {
    std::vector<std::pair<SparseSystem::Row, Rat>> eqs;
    std::array<Mat3, 18> basis;
    for (std::size_t n = 0; n < 18; ++n) basis[n] = evaluate(ansatz_element<Rat>(n), letters);
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) {
            const Mat3 target = commutator(letters[static_cast<std::size_t>(letter_t(g))], letters[static_cast<std::size_t>(letter_t(h))]);
            const std::size_t off = kTtPerPair * tt_pair_index(g, h);
            for (std::size_t e = 0; e < 9; ++e) {
                SparseSystem::Row row;
                for (std::size_t n = 0; n < 18; ++n)
                    if (!is_zero(basis[n].entries()[e])) row[off + n] = basis[n].entries()[e];
                eqs.emplace_back(std::move(row), target.entries()[e]);
            }
        }
    return eqs;
}

/// The [T, T] coefficients: affine in the unknowns, so jets at 0 give the
/// exact system in one pass.
inline TTResult solve_tt(const SklyaninRealization& r, const TFamily& fam, const SkRwData& d, const RatVector& xi,
                         std::size_t degree_cap = 3) {
    TTResult out;
    const auto letters = letter_matrices(r, fam);
    Jet::truncations() = 0;
    const auto tab = skrw_table<Jet>(d, detail::constant_jets(xi), detail::jets_at(RatVector(kTtCount), 0));
    const auto rs = RewriteSystem<Jet>::build(tab, degree_cap);
    Reducer<Jet> red(rs);
    SparseSystem formal(kTtCount), combined(kTtCount);
    for (const auto& tr : tt_triples()) {
        const auto res = formal_jacobi(tab, red, tr.a, tr.b, tr.c);
        detail::add_jet_equations(res, formal);
        detail::add_jet_equations(res, combined);
    }
    out.truncations = Jet::truncations();
    for (auto& [row, rhs] : tt_matrix_equations(letters)) combined.add_equation(std::move(row), std::move(rhs));
    if (!combined.consistent()) throw Error(ErrorKind::no_solution, "no [T, T] table satisfies the formal Jacobi and matrix equations");
    out.full_kernel_dimension = detail::kernel_dim(combined);
    // Declared form: no S Q + Q S terms.
    SparseSystem shaped = combined;
    for (std::size_t p = 0; p < kTtPairs; ++p)
        for (std::size_t m = 15; m < 18; ++m) shaped.add_equation({{kTtPerPair * p + m, Rat(1)}}, Rat(0));
    out.declared_form_consistent = shaped.consistent();
    const auto sol = (out.declared_form_consistent ? shaped : combined).solve();
    out.c = *sol.particular;
    out.kernel = sol.kernel_basis;
    out.formal_kernel_dimension = detail::kernel_dim(formal);

    const auto exact = skrw_table<Rat>(d, xi, out.c);
    const auto rse = RewriteSystem<Rat>::build(exact, degree_cap);
    out.residual_failures = formal_jacobi_failures(exact, rse, tt_triples());
    for (auto& f : matrix_check(exact, letters).failures)
        if (f.first.rfind("[T", 0) == 0) out.matrix.failures.push_back(std::move(f));
    return out;
}

// ---------------------------------------------------------------------------
// Assembled structure.

/// Brackets and derived maps of the discovered algebra. The base algebra A
/// is generated by Q, S1..S3; the module U by the five T letters.
struct NWSOStructure {
    SklyaninParams params;
    SkRwData data;
    TFamily family;
    RatVector xi, tt;
    NCTable<Rat> table;
    RewriteSystem<Rat> rules;
    std::size_t degree_cap = 3;

    /// R(u (x) a): normal form of the word u a, u in U, a in A.
    std::vector<std::pair<std::string, NCPoly<Rat>>> r_map;
    /// T-map: part of [u, v] with exactly one U letter per word.
    std::vector<std::pair<std::string, NCPoly<Rat>>> t_map;
    /// sigma: part of [u, v] with no U letter.
    std::vector<std::pair<std::string, NCPoly<Rat>>> sigma;

    bool sigma_zero() const {
        for (const auto& [n, p] : sigma)
            if (!p.is_zero()) return false;
        return true;
    }
};

inline std::size_t count_t_letters(const Word& w) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < w.size(); ++i) n += is_t_letter(letter(w, i)) ? 1 : 0;
    return n;
}

/// Every [T, T] word has one T letter, at most one S letter and no Q.
inline std::vector<std::string> tt_shape_violations(const NCTable<Rat>& t) {
    std::vector<std::string> out;
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h)
            for (const auto& [w, c] : t(letter_t(g), letter_t(h)).terms()) {
                std::size_t s = 0, q = 0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    const int l = letter(w, i);
                    if (l == kLetterQ) ++q;
                    else if (!is_t_letter(l)) ++s;
                }
                if (count_t_letters(w) != 1 || s > 1 || q > 0) {
                    out.push_back("[" + skrw_letters()[static_cast<std::size_t>(letter_t(g))] + ", " +
                                  skrw_letters()[static_cast<std::size_t>(letter_t(h))] + "]");
                    break;
                }
            }
    return out;
}

/// Rebuilds the rewrite rules and the R, T and sigma maps from s.table.
inline void derive_maps(NWSOStructure& s) {
    if (!s.table.antisymmetric()) throw Error(ErrorKind::shape_violation, "bracket table is not antisymmetric");
    s.rules = RewriteSystem<Rat>::build(s.table, s.degree_cap);
    s.r_map.clear();
    s.t_map.clear();
    s.sigma.clear();
    const auto& names = skrw_letters();
    for (int u = 4; u < 9; ++u)
        for (int a = 0; a < 4; ++a)
            s.r_map.emplace_back(names[static_cast<std::size_t>(u)] + "*" + names[static_cast<std::size_t>(a)], s.rules.rule(u, a));
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) {
            NCPoly<Rat> tm, sg;
            for (const auto& [w, c] : s.table(letter_t(g), letter_t(h)).terms()) (count_t_letters(w) == 0 ? sg : tm).add_term(w, c);
            const std::string key = names[static_cast<std::size_t>(letter_t(g))] + "," + names[static_cast<std::size_t>(letter_t(h))];
            s.t_map.emplace_back(key, std::move(tm));
            s.sigma.emplace_back(key, std::move(sg));
        }
}

inline NWSOStructure assemble_structure(const SklyaninRealization& r, const SkRwData& d, const TFamily& fam, const RatVector& xi,
                                        const RatVector& tt, std::size_t degree_cap = 3) {
    NWSOStructure s;
    s.params = r.params;
    s.data = d;
    s.family = fam;
    s.xi = xi;
    s.tt = tt;
    s.degree_cap = degree_cap;
    s.table = skrw_table<Rat>(d, xi, tt);
    derive_maps(s);
    const auto bad = tt_shape_violations(s.table);
    if (!bad.empty()) throw Error(ErrorKind::shape_violation, "[T, T] outside the declared form: " + bad.front());
    return s;
}

// ---------------------------------------------------------------------------
// Experimental and comparison reports.

/// (T, T, T) formal Jacobi, which the construction does not impose. When
/// the [T, T] solution is a family c0 + sum y_k K_k, the residual is
/// quadratic in y; its coefficients are recovered by exact interpolation
/// and the system is linearized with z_kl = y_k y_l as extra unknowns.
/// An inconsistent linearization certifies that no member satisfies it.
struct TTTReport {
    std::vector<JacobiFailure> failures;  ///< for the selected solution
    std::size_t family_dimension = 0;
    enum class FamilyOutcome { not_needed, none, member_found, undetermined } outcome = FamilyOutcome::not_needed;
    RatVector member;  ///< c of a satisfying member when found
};

inline const char* to_string(TTTReport::FamilyOutcome o) {
    switch (o) {
        case TTTReport::FamilyOutcome::not_needed: return "not-needed";
        case TTTReport::FamilyOutcome::none: return "no-member";
        case TTTReport::FamilyOutcome::member_found: return "member-found";
        case TTTReport::FamilyOutcome::undetermined: return "undetermined";
    }
    return "?";
}

namespace detail {

inline std::map<std::pair<std::size_t, Word>, Rat> ttt_residuals(const SkRwData& d, const RatVector& xi, const RatVector& c,
                                                                std::size_t degree_cap) {
    const auto tab = skrw_table<Rat>(d, xi, c);
    const auto rs = RewriteSystem<Rat>::build(tab, degree_cap);
    Reducer<Rat> red(rs);
    const auto triples = triples_of_family("TTT");
    std::map<std::pair<std::size_t, Word>, Rat> out;
    for (std::size_t k = 0; k < triples.size(); ++k) {
        const auto res = formal_jacobi(tab, red, triples[k].a, triples[k].b, triples[k].c);
        for (const auto& [w, v] : res.terms()) out[{k, w}] = v;
    }
    return out;
}

}  // namespace detail

inline TTTReport ttt_report(const SkRwData& d, const RatVector& xi, const TTResult& tt, std::size_t degree_cap = 3) {
    TTTReport rep;
    {
        const auto tab = skrw_table<Rat>(d, xi, tt.c);
        rep.failures = formal_jacobi_failures(tab, RewriteSystem<Rat>::build(tab, degree_cap), triples_of_family("TTT"));
    }
    rep.family_dimension = tt.kernel.size();
    if (rep.failures.empty() || tt.kernel.empty()) return rep;

    const std::size_t m = tt.kernel.size();
    auto at = [&](const std::vector<std::pair<std::size_t, Rat>>& y) {
        RatVector c = tt.c;
        for (const auto& [k, v] : y)
            for (std::size_t u = 0; u < c.size(); ++u) c[u] += v * tt.kernel[k][u];
        return detail::ttt_residuals(d, xi, c, degree_cap);
    };
    const auto a0 = at({});
    std::vector<std::map<std::pair<std::size_t, Word>, Rat>> plus(m), minus(m);
    for (std::size_t k = 0; k < m; ++k) {
        plus[k] = at({{k, Rat(1)}});
        minus[k] = at({{k, Rat(-1)}});
    }
    // Unknown layout: y_0..y_{m-1}, then z_kl for k <= l.
    std::vector<std::pair<std::size_t, std::size_t>> zs;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k; l < m; ++l) zs.emplace_back(k, l);
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::pair<std::size_t, Word>, Rat>> mixed;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) mixed[{k, l}] = at({{k, Rat(1)}, {l, Rat(1)}});

    std::set<std::pair<std::size_t, Word>> keys;
    auto collect = [&](const auto& mp) {
        for (const auto& kv : mp) keys.insert(kv.first);
    };
    collect(a0);
    for (std::size_t k = 0; k < m; ++k) {
        collect(plus[k]);
        collect(minus[k]);
    }
    for (const auto& [kl, mp] : mixed) collect(mp);
    auto get = [](const std::map<std::pair<std::size_t, Word>, Rat>& mp, const std::pair<std::size_t, Word>& key) {
        auto it = mp.find(key);
        return it == mp.end() ? Rat(0) : it->second;
    };

    SparseSystem sys(m + zs.size());
    for (const auto& key : keys) {
        const Rat a = get(a0, key);
        std::vector<Rat> b(m), ckk(m);
        for (std::size_t k = 0; k < m; ++k) {
            const Rat p = get(plus[k], key), q = get(minus[k], key);
            b[k] = (p - q) / 2;
            ckk[k] = (p + q) / 2 - a;
        }
        SparseSystem::Row row;
        for (std::size_t k = 0; k < m; ++k) row[k] = b[k];
        for (std::size_t z = 0; z < zs.size(); ++z) {
            const auto [k, l] = zs[z];
            row[m + z] = k == l ? ckk[k] : get(mixed[{k, l}], key) - a - b[k] - b[l] - ckk[k] - ckk[l];
        }
        sys.add_equation(std::move(row), -a);
    }
    if (!sys.consistent()) {
        rep.outcome = TTTReport::FamilyOutcome::none;
        return rep;
    }
    const auto sol = sys.solve();
    if (!sol.kernel_basis.empty()) {
        rep.outcome = TTTReport::FamilyOutcome::undetermined;
        return rep;
    }
    const auto& v = *sol.particular;
    for (std::size_t z = 0; z < zs.size(); ++z)
        if (v[m + z] != v[zs[z].first] * v[zs[z].second]) {
            rep.outcome = TTTReport::FamilyOutcome::none;
            return rep;
        }
    rep.outcome = TTTReport::FamilyOutcome::member_found;
    rep.member = tt.c;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t u = 0; u < rep.member.size(); ++u) rep.member[u] += v[k] * tt.kernel[k][u];
    return rep;
}

/// Comparison with the classical {t, t} block at a point where Q is a
/// scalar q0: Q -> q0, S -> 2 q0 s (so that [S_i, S_j] = 2 q0 eps S_k
/// becomes {s_i, s_j} = eps s_k), T~ -> mu t and S T + T S -> 2 s t. The
/// scale enters linearly through lambda = 4 q0 / mu after absorbing it
/// into the solution family, so the fit is an exact linear solve.
struct ClassicalFit {
    bool applicable = false;  ///< Q is a scalar matrix
    bool exact = false;
    std::optional<Rat> mu;    ///< T~ = mu t
    std::vector<std::string> mismatched_pairs;  ///< filled when no fit exists, for the selected solution
};

inline ClassicalFit classical_fit(const SklyaninRealization& r, const TTResult& tt, const BracketTable& classical) {
    ClassicalFit fit;
    if (!is_diagonal_point(r)) return fit;
    fit.applicable = true;
    const Rat q0 = r.q(0, 0);
    // Formal letters -> classical variables: s_m is variable m, T~ generator
    // g is variable 3 + g (same order t11, t22, t12, t13, t23).
    const std::size_t nv = classical.size();
    // {t_g, t_h} = (4 q0 / mu) sum c s_m t_c + (4 q0^2 / mu^2) d s_m.
    // Unknowns: lambda = 4 q0 / mu on the particular solution, y_k on the
    // kernel directions (already multiplied by lambda); d must vanish.
    const std::size_t m = tt.kernel.size();
    SparseSystem sys(1 + m);
    std::vector<RatVector> dirs{tt.c};
    for (const auto& k : tt.kernel) dirs.push_back(k);
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) {
            const std::size_t off = kTtPerPair * tt_pair_index(g, h);
            const CPoly& target = classical.entry[static_cast<std::size_t>(3 + g)][static_cast<std::size_t>(3 + h)];
            std::map<CMonomial, SparseSystem::Row> rows;
            for (std::size_t u = 0; u < dirs.size(); ++u)
                for (std::size_t n = 0; n < 18; ++n) {
                    const Rat& c = dirs[u][off + n];
                    if (is_zero(c)) continue;
                    CMonomial mono(nv, 0);
                    if (n < 15) {
                        mono[n / 5] = 1;
                        mono[3 + n % 5] += 1;
                    } else {
                        mono[n - 15] = 1;  // d-terms: must cancel on their own
                    }
                    rows[mono][u] += c;
                }
            std::set<CMonomial> monos;
            for (const auto& [mono, row] : rows) monos.insert(mono);
            for (const auto& [mono, c] : target.terms()) monos.insert(mono);
            for (const auto& mono : monos) {
                SparseSystem::Row row = rows.count(mono) ? rows.at(mono) : SparseSystem::Row{};
                auto it = target.terms().find(mono);
                sys.add_equation(std::move(row), it == target.terms().end() ? Rat(0) : it->second);
            }
        }
    if (sys.consistent()) {
        const auto sol = sys.solve();
        const Rat lambda = (*sol.particular)[0];
        if (!is_zero(lambda)) {
            fit.exact = true;
            fit.mu = 4 * q0 / lambda;
            return fit;
        }
    }
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h) fit.mismatched_pairs.push_back(skrw_letters()[static_cast<std::size_t>(letter_t(g))] + "," +
                                                                    skrw_letters()[static_cast<std::size_t>(letter_t(h))]);
    return fit;
}

/// Rescaling T -> mu T: Xi is unchanged and every [T, T] solution scales
/// by mu (checked modulo the solution family).
struct RescalingReport {
    Rat mu;
    bool xi_unchanged = false;
    bool tt_scaled = false;
};

inline RescalingReport rescaling_covariance(const SklyaninRealization& r, const TFamily& fam, const SkRwData& d, const RatVector& xi,
                                            const TTResult& tt, const Rat& mu, std::size_t degree_cap = 3) {
    RescalingReport rep;
    rep.mu = mu;
    const TFamily f2 = fam.scaled(mu);
    const SkRwData d2{d.f, f2.kappa};
    const auto l2 = solve_lemma2(r, f2, d2, degree_cap);
    rep.xi_unchanged = l2.converged && l2.xi == xi;
    const auto tt2 = solve_tt(r, f2, d2, l2.xi, degree_cap);
    // mu * c - c2 in span(kernel of tt2)?
    RatMatrix a(kTtCount, tt2.kernel.size() + 1);
    RatVector b(kTtCount);
    for (std::size_t u = 0; u < kTtCount; ++u) {
        for (std::size_t k = 0; k < tt2.kernel.size(); ++k) a(u, k) = tt2.kernel[k][u];
        a(u, tt2.kernel.size()) = 0;
        b[u] = mu * tt.c[u] - tt2.c[u];
    }
    rep.tt_scaled = solve_linear(a, b).consistent() && tt2.kernel.size() == tt.kernel.size();
    return rep;
}

}  // namespace skrw

#endif  // SKRW_DISCOVERY_HPP
