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

#ifndef SKRW_SKLYANIN_HPP
#define SKRW_SKLYANIN_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "mat3.hpp"

namespace skrw {

using STriple = std::array<Mat3, 3>;

/// The six entries of the S-triple, in the order alpha..zeta.
struct SklyaninParams {
    Rat alpha, beta, gamma, delta, epsilon, zeta;

    static constexpr std::array<const char*, 6> names{"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};

    std::array<Rat, 6> as_array() const { return {alpha, beta, gamma, delta, epsilon, zeta}; }
    static SklyaninParams from_array(const std::array<Rat, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
    static SklyaninParams diagonal_point() { return {1, 0, 1, 0, 0, 1}; }

    /// beta = delta = epsilon = 0 (the parametric form of the trace condition).
    bool on_locus_pattern() const { return is_zero(beta) && is_zero(delta) && is_zero(epsilon); }

    friend bool operator==(const SklyaninParams&, const SklyaninParams&) = default;
};

/// S1 has (1,2) = alpha; S2 has (1,2) = beta, (1,3) = gamma; S3 has
/// (1,2) = delta, (1,3) = epsilon, (2,3) = zeta; skew completion.
inline STriple build_s(const SklyaninParams& p) {
    return {Mat3::skew(p.alpha, 0, 0), Mat3::skew(p.beta, p.gamma, 0), Mat3::skew(p.delta, p.epsilon, p.zeta)};
}

/// e1, e2, e3 of so(3): [e_i, e_j] = eps_ijk e_k.
inline STriple so3_basis() { return {Mat3::skew(1, 0, 0), Mat3::skew(0, 0, 1), Mat3::skew(0, 1, 0)}; }

inline bool linearly_independent(const STriple& s) {
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const auto c = s[static_cast<std::size_t>(i)].skew_coords();
        for (int j = 0; j < 3; ++j) m(i, j) = c[static_cast<std::size_t>(j)];
    }
    return !is_zero(m.det());
}

/// Which version of the closed-form u, v, w to use. `printed` follows the
/// published pairwise sums verbatim; `amended` replaces the last term
/// eps^2 gamma^2 of v + w by delta^2 gamma^2, which is what the linear
/// system yields.
enum class QFormula { printed, amended };

inline const char* to_string(QFormula f) { return f == QFormula::printed ? "printed" : "amended"; }

/// Closed-form Q. Requires alpha, gamma, zeta nonzero.
inline Mat3 q_closed_form(const SklyaninParams& p, QFormula formula = QFormula::printed) {
    const auto& [a, b, c, d, e, z] = p;
    if (is_zero(a)) throw Error(ErrorKind::zero_denominator, "closed-form Q needs alpha != 0");
    if (is_zero(c)) throw Error(ErrorKind::zero_denominator, "closed-form Q needs gamma != 0");
    if (is_zero(z)) throw Error(ErrorKind::zero_denominator, "closed-form Q needs zeta != 0");

    const Rat x = (a * a * e + b * b * e - b * c * d) / (a * c);
    const Rat y = (b * e - c * d) / a;
    const Rat zq = b * z / a;
    const Rat u_plus_v = -c * z / a;
    const Rat u_plus_w = -z * (a * a + b * b) / (a * c);
    const Rat last = formula == QFormula::printed ? Rat(e * e * c * c) : Rat(d * d * c * c);
    const Rat v_plus_w = (2 * b * c * d * e - a * a * e * e - b * b * e * e - a * a * c * c - last) / (a * c * z);

    const Rat u = (u_plus_v + u_plus_w - v_plus_w) / 2;
    const Rat v = (u_plus_v + v_plus_w - u_plus_w) / 2;
    const Rat w = (u_plus_w + v_plus_w - u_plus_v) / 2;
    return Mat3::symmetric(u, v, w, x, y, zq);
}

/// Symmetric basis matrices in (u, v, w, x, y, z) order.
inline std::array<Mat3, 6> symmetric_basis() {
    std::array<Mat3, 6> b;
    for (std::size_t k = 0; k < 6; ++k) {
        std::array<Rat, 6> c{};
        c[k] = 1;
        b[k] = Mat3::symmetric(c[0], c[1], c[2], c[3], c[4], c[5]);
    }
    return b;
}

inline Mat3 from_sym_coords(const RatVector& c, std::size_t offset = 0) {
    return Mat3::symmetric(c[offset], c[offset + 1], c[offset + 2], c[offset + 3], c[offset + 4], c[offset + 5]);
}

/// The 27 x 6 system [S_i, S_j] = sum_k eps_ijk (Q S_k + S_k Q), rows
/// ordered by pair (i, j) with i < j, then row-major matrix entry.
inline LinSolveResult q_linear_system(const STriple& s) {
    const auto basis = symmetric_basis();
    RatMatrix a(27, 6);
    RatVector b(27);
    std::size_t row = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Mat3 lhs = commutator(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
            std::array<Mat3, 6> cols;
            for (std::size_t u = 0; u < 6; ++u)
                for (int k = 0; k < 3; ++k) {
                    const int e = eps0(i, j, k);
                    if (e != 0) cols[u] += anticommutator(basis[u], s[static_cast<std::size_t>(k)]) * Rat(e);
                }
            for (std::size_t ent = 0; ent < 9; ++ent, ++row) {
                for (std::size_t u = 0; u < 6; ++u) a(row, u) = cols[u].entries()[ent];
                b[row] = lhs.entries()[ent];
            }
        }
    return solve_linear(a, b);
}

/// Q from the linear system; errors distinguish dependent input, no
/// solution and more than one solution.
inline Mat3 q_from_linear_system(const STriple& s) {
    if (!linearly_independent(s)) throw Error(ErrorKind::dependent_s, "S1, S2, S3 are linearly dependent");
    const auto res = q_linear_system(s);
    if (!res.consistent()) throw Error(ErrorKind::no_solution, "no symmetric Q satisfies the commutation relations");
    if (!res.kernel_basis.empty())
        throw Error(ErrorKind::non_unique,
                    "symmetric Q is not unique (kernel dimension " + std::to_string(res.kernel_basis.size()) + ")");
    return from_sym_coords(*res.particular);
}

struct SklyaninRealization {
    SklyaninParams params;
    STriple s;
    Mat3 q;

    const Rat& u() const { return q(0, 0); }
    const Rat& v() const { return q(1, 1); }
    const Rat& w() const { return q(2, 2); }
    const Rat& x() const { return q(0, 1); }
    const Rat& y() const { return q(0, 2); }
    const Rat& z() const { return q(1, 2); }
};

inline SklyaninRealization realize(const SklyaninParams& p) {
    auto s = build_s(p);
    Mat3 q = q_from_linear_system(s);
    return {p, std::move(s), std::move(q)};
}

/// [S_i, S_j] - sum_k eps_ijk (Q S_k + S_k Q) for each pair i < j.
inline std::array<Mat3, 3> relation_residuals(const STriple& s, const Mat3& q) {
    std::array<Mat3, 3> out;
    std::size_t n = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j, ++n) {
            Mat3 r = commutator(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
            for (int k = 0; k < 3; ++k)
                if (int e = eps0(i, j, k)) r -= anticommutator(q, s[static_cast<std::size_t>(k)]) * Rat(e);
            out[n] = r;
        }
    return out;
}

/// Index pairs (j, k), j <= k, of the symmetrized products S_j S_k + S_k S_j.
inline constexpr std::array<std::pair<int, int>, 6> kQuadPairs{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};

inline std::array<Mat3, 6> quad_basis(const STriple& s) {
    std::array<Mat3, 6> b;
    for (std::size_t n = 0; n < 6; ++n)
        b[n] = anticommutator(s[static_cast<std::size_t>(kQuadPairs[n].first)], s[static_cast<std::size_t>(kQuadPairs[n].second)]);
    return b;
}

inline bool on_sklyanin_locus(const STriple& s) {
    return is_zero((s[0] * s[1]).trace()) && is_zero((s[0] * s[2]).trace()) && is_zero((s[1] * s[2]).trace());
}

/// F_i = [Q, S_i] in the basis S_j S_k + S_k S_j (j <= k) and, on the
/// Sklyanin locus, the J parameters.
///
/// J convention: the coefficient of (S_j S_k + S_k S_j) in F_i is
/// eps_ijk * J_jk, counted once per unordered pair. The alternative reading
/// that double-counts the eps-sum (coefficient 2 J_jk) is evaluated too so
/// the report can show which reading satisfies the cubic identity.
struct QuadExpansion {
    std::array<RatVector, 3> coefficients;  ///< per i, six coefficients in kQuadPairs order
    std::vector<RatVector> kernel;          ///< relations among the six products (empty generically)
    bool on_locus = false;
    bool locus_shape_ok = false;  ///< on the locus, F_i only involves the (j, k) != i pair
    std::optional<Rat> j12, j23, j31;
    std::optional<Rat> identity_residual;         ///< J12 + J23 + J31 + J12 J23 J31, single count
    std::optional<Rat> identity_residual_double;  ///< same with J halved

    bool identity_holds() const { return identity_residual && is_zero(*identity_residual); }
};

inline Rat j_identity(const Rat& a, const Rat& b, const Rat& c) { return a + b + c + a * b * c; }

inline QuadExpansion expand_f(const SklyaninRealization& r) {
    const auto basis = quad_basis(r.s);
    const std::vector<Mat3> span(basis.begin(), basis.end());
    QuadExpansion out;
    for (std::size_t i = 0; i < 3; ++i) {
        const Mat3 f = commutator(r.q, r.s[i]);
        auto e = express_in_span(f, span);
        if (!e.found())
            throw Error(ErrorKind::expansion_failure, "F_" + std::to_string(i + 1) + " = [Q, S_i] is not a quadratic form in S");
        out.coefficients[i] = std::move(*e.coefficients);
        out.kernel = std::move(e.kernel);
    }
    out.on_locus = on_sklyanin_locus(r.s);
    if (!out.on_locus) return out;

    // F_1 <-> (2,3) at index 5, F_2 <-> (1,3) at index 4, F_3 <-> (1,2) at index 3.
    constexpr std::array<std::size_t, 3> own{5, 4, 3};
    out.locus_shape_ok = out.kernel.empty();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t n = 0; n < 6; ++n)
            if (n != own[i] && !is_zero(out.coefficients[i][n])) out.locus_shape_ok = false;
    // eps_123 = eps_231 = eps_312 = +1.
    out.j23 = out.coefficients[0][5];
    out.j31 = out.coefficients[1][4];
    out.j12 = out.coefficients[2][3];
    out.identity_residual = j_identity(*out.j12, *out.j23, *out.j31);
    out.identity_residual_double = j_identity(*out.j12 / 2, *out.j23 / 2, *out.j31 / 2);
    return out;
}

/// p(Q) A = Q A + A Q.
class PofQ {
public:
    explicit PofQ(Mat3 q) : q_(std::move(q)) {}

    Mat3 apply(const Mat3& a) const { return anticommutator(q_, a); }

    /// Matrix of p(Q) on skew matrices in (a12, a13, a23) coordinates.
    RatMatrix skew_operator() const {
        RatMatrix m(3, 3);
        for (std::size_t c = 0; c < 3; ++c) {
            std::array<Rat, 3> e{};
            e[c] = 1;
            const auto img = apply(Mat3::skew(e[0], e[1], e[2])).skew_coords();
            for (std::size_t r = 0; r < 3; ++r) m(r, c) = img[r];
        }
        return m;
    }

    /// Determinant of the skew restriction; it equals the product of the
    /// pairwise eigenvalue sums of Q.
    Rat skew_determinant() const {
        const auto m = skew_operator();
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return t.det();
    }

    bool invertible_on_skew() const { return !is_zero(skew_determinant()); }

    Mat3 inverse_on_skew(const Mat3& a) const {
        if (!a.is_skew()) throw Error(ErrorKind::precondition, "p(Q)^-1 is only defined here on skew matrices");
        const auto c = a.skew_coords();
        const auto res = solve_linear(skew_operator(), {c[0], c[1], c[2]});
        if (!res.unique())
            throw Error(ErrorKind::singular_operator,
                        "p(Q) is singular on skew matrices: a pairwise eigenvalue sum of Q vanishes (det = " +
                            to_string(skew_determinant()) + ")");
        const auto& x = *res.particular;
        return Mat3::skew(x[0], x[1], x[2]);
    }

    const Mat3& q() const noexcept { return q_; }

private:
    Mat3 q_;
};

/// tr(A Q B + B Q A).
inline Rat q_form(const Mat3& q, const Mat3& a, const Mat3& b) { return (a * q * b + b * q * a).trace(); }

/// S3 = p(Q)^-1 [S1, S2]; checks the Q-orthogonality claims on the way out.
inline Mat3 third_from_pair(const Mat3& q, const Mat3& s1, const Mat3& s2) {
    if (!q.is_symmetric()) throw Error(ErrorKind::precondition, "Q must be symmetric");
    if (!s1.is_skew() || !s2.is_skew()) throw Error(ErrorKind::precondition, "S1 and S2 must be skew");
    if (!is_zero(q_form(q, s1, s2))) throw Error(ErrorKind::precondition, "S1 and S2 are not Q-orthogonal");
    const PofQ p(q);
    Mat3 s3 = p.inverse_on_skew(commutator(s1, s2));
    if (!is_zero(q_form(q, s1, s3)) || !is_zero(q_form(q, s2, s3)))
        throw Error(ErrorKind::claim_violation, "p(Q)^-1 [S1, S2] is not Q-orthogonal to S1 and S2");
    return s3;
}

/// Scalars making (l1 S1, l2 S2, l3 S3', Q) satisfy the commutation
/// relations, S3' = p(Q)^-1 [S1, S2]. The constraints force
/// l3 = l1 l2, l1^2 = 1 / mu2, l2^2 = 1 / mu1 where
/// [S2, S3'] = mu1 p(Q) S1 and [S3', S1] = mu2 p(Q) S2. The remaining
/// freedom is the choice of signs of l1 and l2; l1, l2, l3 are filled in
/// when the squares are rational squares.
struct Multipliers {
    Mat3 s3;
    Rat mu1, mu2;
    Rat lambda1_sq, lambda2_sq;
    std::optional<Rat> lambda1, lambda2, lambda3;
};

inline std::optional<Rat> rational_sqrt(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    return Rat(n, d);
}

inline Multipliers find_multipliers(const Mat3& q, const Mat3& s1, const Mat3& s2) {
    Multipliers m;
    m.s3 = third_from_pair(q, s1, s2);
    const PofQ p(q);
    auto ratio = [](const Mat3& lhs, const Mat3& dir) -> std::optional<Rat> {
        auto e = express_in_span(lhs, {dir});
        if (!e.found() || !e.kernel.empty()) return std::nullopt;
        return (*e.coefficients)[0];
    };
    const auto mu1 = ratio(commutator(s2, m.s3), p.apply(s1));
    const auto mu2 = ratio(commutator(m.s3, s1), p.apply(s2));
    if (!mu1 || !mu2 || is_zero(*mu1) || is_zero(*mu2))
        throw Error(ErrorKind::no_solution, "no multipliers: [S2, S3] or [S3, S1] is not a nonzero multiple of p(Q) S1, p(Q) S2");
    m.mu1 = *mu1;
    m.mu2 = *mu2;
    m.lambda2_sq = 1 / m.mu1;
    m.lambda1_sq = 1 / m.mu2;
    m.lambda1 = rational_sqrt(m.lambda1_sq);
    m.lambda2 = rational_sqrt(m.lambda2_sq);
    if (m.lambda1 && m.lambda2) m.lambda3 = *m.lambda1 * *m.lambda2;
    return m;
}

/// Residuals of the three relations for (l1 S1, l2 S2, l1 l2 S3', Q),
/// written through the squares so they stay rational.
inline std::array<Mat3, 3> multiplier_residuals(const Mat3& q, const Mat3& s1, const Mat3& s2, const Multipliers& m) {
    const PofQ p(q);
    return {commutator(s1, s2) - p.apply(m.s3), commutator(s2, m.s3) * m.lambda2_sq - p.apply(s1),
            commutator(m.s3, s1) * m.lambda1_sq - p.apply(s2)};
}

struct OrthogonalityReport {
    Rat det_q;
    std::array<Rat, 3> q_orthogonality;  ///< tr(S_i Q S_j + S_j Q S_i) for (1,2), (1,3), (2,3)
    std::array<Rat, 3> plain_traces;     ///< tr(S_i S_j) for the same pairs
    bool on_locus = false;

    bool nondegenerate() const { return !is_zero(det_q); }
    bool orthogonal() const {
        for (const auto& t : q_orthogonality)
            if (!is_zero(t)) return false;
        return true;
    }
};

inline OrthogonalityReport orthogonality_report(const SklyaninRealization& r) {
    OrthogonalityReport rep;
    rep.det_q = r.q.det();
    std::size_t n = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j, ++n) {
            rep.q_orthogonality[n] = q_form(r.q, r.s[i], r.s[j]);
            rep.plain_traces[n] = (r.s[i] * r.s[j]).trace();
        }
    rep.on_locus = on_sklyanin_locus(r.s);
    return rep;
}

/// P^T Q P = D with D diagonal, using rational congruence operations only.
struct CongruenceDiagonalization {
    Mat3 p;
    Mat3 d;
};

inline CongruenceDiagonalization congruence_diagonalize(const Mat3& q) {
    if (!q.is_symmetric()) throw Error(ErrorKind::precondition, "congruence diagonalization needs a symmetric matrix");
    Mat3 a = q;
    Mat3 p = Mat3::identity();
    // Elementary congruence: column op on P, matching row+column op on A.
    auto add_multiple = [&](int target, int source, const Rat& f) {
        for (int r = 0; r < 3; ++r) p(r, target) += f * p(r, source);
        for (int c = 0; c < 3; ++c) a(target, c) += f * a(source, c);
        for (int r = 0; r < 3; ++r) a(r, target) += f * a(r, source);
    };
    for (int i = 0; i < 3; ++i) {
        if (is_zero(a(i, i))) {
            for (int j = i + 1; j < 3; ++j)
                if (!is_zero(a(i, j))) {
                    if (!is_zero(a(j, j))) {
                        // Swap-free fix: fold column j into column i.
                        const Rat f = is_zero(a(j, j) + 2 * a(i, j)) ? Rat(-1) : Rat(1);
                        add_multiple(i, j, f);
                    } else {
                        add_multiple(i, j, 1);
                    }
                    break;
                }
        }
        if (is_zero(a(i, i))) continue;
        for (int j = i + 1; j < 3; ++j)
            if (!is_zero(a(i, j))) add_multiple(j, i, -a(i, j) / a(i, i));
    }
    return {p, a};
}

}  // namespace skrw

#endif  // SKRW_SKLYANIN_HPP
