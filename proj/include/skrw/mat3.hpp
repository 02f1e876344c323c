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

#ifndef SKRW_MAT3_HPP
#define SKRW_MAT3_HPP

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace skrw {

/// Levi-Civita symbol with 1-based indices, eps(1,2,3) = +1.
inline int levi_civita(int i, int j, int k) {
    if (i < 1 || i > 3 || j < 1 || j > 3 || k < 1 || k > 3)
        throw std::out_of_range("levi_civita: indices must lie in 1..3");
    if (i == j || j == k || i == k) return 0;
    // (1,2,3) and its cyclic shifts are even.
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

/// 0-based variant used internally.
inline int eps0(int i, int j, int k) { return levi_civita(i + 1, j + 1, k + 1); }

/// Exact 3x3 matrix, row-major storage.
class Mat3 {
public:
    Mat3() = default;
    explicit Mat3(const std::array<Rat, 9>& entries) : a_(entries) {}

    static Mat3 zero() { return Mat3{}; }
    static Mat3 identity() {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m(i, i) = 1;
        return m;
    }
    static Mat3 diag(const Rat& d0, const Rat& d1, const Rat& d2) {
        Mat3 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        return m;
    }
    /// Symmetric matrix from (u, v, w, x, y, z) = (a11, a22, a33, a12, a13, a23).
    static Mat3 symmetric(const Rat& u, const Rat& v, const Rat& w, const Rat& x, const Rat& y, const Rat& z) {
        return Mat3({u, x, y, x, v, z, y, z, w});
    }
    /// Skew matrix with upper entries (a12, a13, a23).
    static Mat3 skew(const Rat& a12, const Rat& a13, const Rat& a23) {
        return Mat3({Rat(0), a12, a13, Rat(-a12), Rat(0), a23, Rat(-a13), Rat(-a23), Rat(0)});
    }

    Rat& operator()(int r, int c) { return a_[static_cast<std::size_t>(3 * r + c)]; }
    const Rat& operator()(int r, int c) const { return a_[static_cast<std::size_t>(3 * r + c)]; }
    const std::array<Rat, 9>& entries() const noexcept { return a_; }

    Mat3& operator+=(const Mat3& o) {
        for (std::size_t i = 0; i < 9; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat3& operator-=(const Mat3& o) {
        for (std::size_t i = 0; i < 9; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat3& operator*=(const Rat& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
    friend Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
    friend Mat3 operator-(Mat3 a) { return a *= Rat(-1); }
    friend Mat3 operator*(Mat3 a, const Rat& s) { return a *= s; }
    friend Mat3 operator*(const Rat& s, Mat3 a) { return a *= s; }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Rat acc = 0;
                for (int k = 0; k < 3; ++k) acc += a(i, k) * b(k, j);
                c(i, j) = acc;
            }
        return c;
    }
    friend bool operator==(const Mat3& a, const Mat3& b) { return a.a_ == b.a_; }
    friend bool operator!=(const Mat3& a, const Mat3& b) { return !(a == b); }

    Mat3 transpose() const {
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
        return t;
    }
    Rat trace() const { return a_[0] + a_[4] + a_[8]; }
    Rat det() const {
        const auto& m = *this;
        return Rat(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!skrw::is_zero(x)) return false;
        return true;
    }
    bool is_symmetric() const { return *this == transpose(); }
    bool is_skew() const { return *this == -transpose(); }

    /// Upper entries (a12, a13, a23) of a skew matrix.
    std::array<Rat, 3> skew_coords() const { return {(*this)(0, 1), (*this)(0, 2), (*this)(1, 2)}; }
    /// (a11, a22, a33, a12, a13, a23) of a symmetric matrix.
    std::array<Rat, 6> sym_coords() const {
        return {(*this)(0, 0), (*this)(1, 1), (*this)(2, 2), (*this)(0, 1), (*this)(0, 2), (*this)(1, 2)};
    }

private:
    std::array<Rat, 9> a_{};
};

inline Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }
inline Mat3 anticommutator(const Mat3& a, const Mat3& b) { return a * b + b * a; }

inline std::ostream& operator<<(std::ostream& os, const Mat3& m) {
    os << '[';
    for (int i = 0; i < 3; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < 3; ++j) os << (j ? " " : "") << to_string(m(i, j));
    }
    return os << ']';
}

}  // namespace skrw

#endif  // SKRW_MAT3_HPP
