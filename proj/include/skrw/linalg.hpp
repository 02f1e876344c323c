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

#ifndef SKRW_LINALG_HPP
#define SKRW_LINALG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mat3.hpp"
#include "rational.hpp"

namespace skrw {

using RatVector = std::vector<Rat>;

/// Dense row-major matrix of rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    RatVector apply(const RatVector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("RatMatrix::apply: dimension mismatch");
        RatVector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Rat acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if (!is_zero((*this)(r, c))) acc += (*this)(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> a_;
};

struct LinSolveResult {
    std::optional<RatVector> particular;  ///< absent iff the system is inconsistent
    std::vector<RatVector> kernel_basis;
    std::size_t rank = 0;

    bool consistent() const noexcept { return particular.has_value(); }
    bool unique() const noexcept { return consistent() && kernel_basis.empty(); }
};

namespace detail {

inline Int lcm_of_denominators(const std::vector<Rat>& row) {
    Int l = 1;
    for (const auto& x : row)
        if (!is_zero(x)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

/// Given the reduced echelon data (pivot columns, rows normalized so the
/// pivot is 1 and pivot columns are cleared), extract particular solution
/// and kernel.
inline LinSolveResult extract_solution(const std::vector<std::vector<Rat>>& rref, const std::vector<std::size_t>& pivots,
                                       std::size_t n, bool consistent) {
    LinSolveResult out;
    out.rank = pivots.size();
    std::vector<int> pivot_row(n, -1);
    for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<int>(r);
    if (consistent) {
        RatVector x(n);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rref[r][n];
        out.particular = std::move(x);
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_row[f] >= 0) continue;
        RatVector k(n);
        k[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -rref[r][f];
        out.kernel_basis.push_back(std::move(k));
    }
    return out;
}

}  // namespace detail

/// Solves A x = b exactly. Rows are scaled to integers, reduced to echelon
/// form by fraction-free (Bareiss) elimination, then back-substituted over
/// the rationals. Free variables are set to zero in the particular solution;
/// the kernel basis has one vector per free column with a 1 in that column.
inline LinSolveResult solve_linear(const RatMatrix& a, const RatVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: rhs length does not match row count");
    const std::size_t m = a.rows(), n = a.cols();

    std::vector<std::vector<Int>> w(m, std::vector<Int>(n + 1));
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<Rat> row(n + 1);
        for (std::size_t c = 0; c < n; ++c) row[c] = a(r, c);
        row[n] = b[r];
        const Int l = detail::lcm_of_denominators(row);
        for (std::size_t c = 0; c <= n; ++c) {
            Rat scaled = row[c] * l;
            w[r][c] = scaled.get_num();
        }
    }

    std::vector<std::size_t> pivots;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && sgn(w[p][c]) == 0) ++p;
        if (p == m) continue;
        std::swap(w[p], w[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j <= n; ++j) {
                Int t = w[r][c] * w[i][j] - w[i][c] * w[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w[i][j] = std::move(t);
            }
            w[i][c] = 0;
        }
        prev = w[r][c];
        pivots.push_back(c);
        ++r;
    }
    bool consistent = true;
    for (std::size_t i = r; i < m; ++i)
        if (sgn(w[i][n]) != 0) consistent = false;

    // Back-substitution to reduced form over the rationals.
    std::vector<std::vector<Rat>> rref(pivots.size(), std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const Rat inv = Rat(1) / Rat(w[i][pivots[i]]);
        for (std::size_t j = 0; j <= n; ++j)
            if (sgn(w[i][j]) != 0) rref[i][j] = Rat(w[i][j]) * inv;
    }
    for (std::size_t i = pivots.size(); i-- > 0;) {
        for (std::size_t k = 0; k < i; ++k) {
            const Rat f = rref[k][pivots[i]];
            if (is_zero(f)) continue;
            for (std::size_t j = pivots[i]; j <= n; ++j)
                if (!is_zero(rref[i][j])) rref[k][j] -= f * rref[i][j];
        }
    }
    return detail::extract_solution(rref, pivots, n, consistent);
}

inline std::vector<RatVector> nullspace(const RatMatrix& a) { return solve_linear(a, RatVector(a.rows())).kernel_basis; }

/// Sparse exact system assembled one equation at a time:
/// sum_j coeffs[j] * x_j = rhs. Rows are reduced against the pivots found
/// so far as they arrive, which keeps large sparse systems cheap.
class SparseSystem {
public:
    using Row = std::map<std::size_t, Rat>;

    explicit SparseSystem(std::size_t unknowns) : n_(unknowns) {}

    std::size_t unknowns() const noexcept { return n_; }
    std::size_t equations_seen() const noexcept { return seen_; }
    bool consistent() const noexcept { return consistent_; }

    void add_equation(Row coeffs, Rat rhs) {
        ++seen_;
        for (auto it = coeffs.begin(); it != coeffs.end();)
            it = is_zero(it->second) ? coeffs.erase(it) : std::next(it);
        reduce(coeffs, rhs);
        if (coeffs.empty()) {
            if (!is_zero(rhs)) consistent_ = false;
            return;
        }
        const std::size_t p = coeffs.begin()->first;
        const Rat inv = Rat(1) / coeffs.begin()->second;
        for (auto& [c, v] : coeffs) v *= inv;
        rhs *= inv;
        basis_.emplace(p, std::make_pair(std::move(coeffs), std::move(rhs)));
    }

    LinSolveResult solve() const {
        // Full back-substitution into reduced form.
        std::map<std::size_t, std::pair<Row, Rat>> red = basis_;
        for (auto it = red.rbegin(); it != red.rend(); ++it) {
            auto& [row, rhs] = it->second;
            for (auto jt = std::next(it); jt != red.rend(); ++jt) {
                auto& [other, orhs] = jt->second;
                auto f = other.find(it->first);
                if (f == other.end()) continue;
                const Rat factor = f->second;
                for (const auto& [c, v] : row) {
                    Rat& slot = other[c];
                    slot -= factor * v;
                    if (is_zero(slot)) other.erase(c);
                }
                orhs -= factor * rhs;
            }
        }
        LinSolveResult out;
        out.rank = red.size();
        if (consistent_) {
            RatVector x(n_);
            for (const auto& [p, rr] : red) x[p] = rr.second;
            out.particular = std::move(x);
        }
        for (std::size_t f = 0; f < n_; ++f) {
            if (red.count(f)) continue;
            RatVector k(n_);
            k[f] = 1;
            for (const auto& [p, rr] : red) {
                auto it = rr.first.find(f);
                if (it != rr.first.end()) k[p] = -it->second;
            }
            out.kernel_basis.push_back(std::move(k));
        }
        return out;
    }

private:
    void reduce(Row& coeffs, Rat& rhs) const {
        while (!coeffs.empty()) {
            bool changed = false;
            for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
                auto b = basis_.find(it->first);
                if (b == basis_.end()) continue;
                const Rat factor = it->second;
                for (const auto& [c, v] : b->second.first) {
                    Rat& slot = coeffs[c];
                    slot -= factor * v;
                    if (is_zero(slot)) coeffs.erase(c);
                }
                rhs -= factor * b->second.second;
                changed = true;
                break;
            }
            if (!changed) break;
        }
    }

    std::size_t n_;
    std::size_t seen_ = 0;
    bool consistent_ = true;
    std::map<std::size_t, std::pair<Row, Rat>> basis_;
};

/// Outcome of expressing a matrix in the span of a list of matrices.
struct SpanExpansion {
    std::optional<RatVector> coefficients;  ///< absent when the target is outside the span
    std::vector<RatVector> kernel;          ///< relations among the spanning matrices

    bool found() const noexcept { return coefficients.has_value(); }
};

/// Solves sum_k c_k * spanning[k] = target on the row-major flattening.
inline SpanExpansion express_in_span(const Mat3& target, const std::vector<Mat3>& spanning) {
    if (spanning.empty()) throw std::invalid_argument("express_in_span: empty spanning list");
    RatMatrix a(9, spanning.size());
    RatVector b(9);
    for (std::size_t e = 0; e < 9; ++e) {
        for (std::size_t k = 0; k < spanning.size(); ++k) a(e, k) = spanning[k].entries()[e];
        b[e] = target.entries()[e];
    }
    auto res = solve_linear(a, b);
    return {std::move(res.particular), std::move(res.kernel_basis)};
}

inline Mat3 combine(const std::vector<Mat3>& mats, const RatVector& coeffs) {
    if (mats.size() != coeffs.size()) throw std::invalid_argument("combine: length mismatch");
    Mat3 out;
    for (std::size_t k = 0; k < mats.size(); ++k)
        if (!is_zero(coeffs[k])) out += mats[k] * coeffs[k];
    return out;
}

}  // namespace skrw

#endif  // SKRW_LINALG_HPP
