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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <skrw/jet.hpp>
#include <skrw/linalg.hpp>
#include <skrw/mat3.hpp>
#include <skrw/rational.hpp>
#include <skrw/sampling.hpp>
#include <skrw/sklyanin.hpp>

using namespace skrw;

namespace {

Mat3 random_mat(RationalSampler& g) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = g.rational();
    return m;
}

const STriple e = so3_basis();

}  // namespace

TEST_CASE("rationals parse exactly and stay canonical") {
    CHECK(parse_rat("2/3") == Rat(2, 3));
    CHECK(parse_rat("-4/6") == Rat(-2, 3));
    CHECK(to_string(parse_rat("-4/6")) == "-2/3");
    CHECK(to_string(parse_rat("0/5")) == "0");
    CHECK(parse_rat("+7") == Rat(7));
    for (const char* bad : {"0.5", "1e3", "1/0", "", "/3", "3/", "1/-2", "a", "1 /2"}) CHECK_THROWS_AS(parse_rat(bad), ParseError);
}

TEST_CASE("rational sums agree computed two ways") {
    RationalSampler g(11);
    for (int n = 0; n < 200; ++n) {
        const Rat a = g.rational(), b = g.nonzero_rational();
        const Rat direct = a + b;
        Rat common(a.get_num() * b.get_den() + b.get_num() * a.get_den(), a.get_den() * b.get_den());
        common.canonicalize();
        CHECK(direct == common);
        CHECK(direct.get_den() > 0);
        CHECK(gcd(direct.get_num(), direct.get_den()) == 1);
    }
}

TEST_CASE("sampler yields canonical values in range and is seed-determined") {
    RationalSampler a(5), b(5);
    for (int n = 0; n < 500; ++n) {
        const Rat x = a.rational();
        CHECK(x == b.rational());
        CHECK(gcd(x.get_num(), x.get_den()) == 1);
        CHECK(abs(x.get_num()) <= 20);
        CHECK(x.get_den() >= 1);
        CHECK(x.get_den() <= 10);
    }
    const auto p = sample_params(3, 50, false), q = sample_params(3, 50, false);
    CHECK(p == q);
    for (const auto& s : p) {
        CHECK(!is_zero(s.alpha));
        CHECK(!is_zero(s.gamma));
        CHECK(!is_zero(s.zeta));
    }
    for (const auto& s : sample_params(3, 50, true)) CHECK(s.on_locus_pattern());
}

TEST_CASE("levi-civita") {
    CHECK(levi_civita(1, 2, 3) == 1);
    CHECK(levi_civita(2, 1, 3) == -1);
    CHECK(levi_civita(1, 1, 2) == 0);
    CHECK(levi_civita(3, 1, 2) == 1);
    CHECK_THROWS(levi_civita(0, 1, 2));
    CHECK_THROWS(levi_civita(1, 2, 4));
}

TEST_CASE("commutator and anticommutator on the so(3) basis") {
    CHECK(commutator(e[0], e[1]) == e[2]);
    CHECK(commutator(e[0], e[2]) == -e[1]);
    CHECK(commutator(e[0], e[0]).is_zero());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mat3 rhs;
            for (int k = 0; k < 3; ++k) rhs += e[static_cast<std::size_t>(k)] * Rat(eps0(i, j, k));
            CHECK(commutator(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]) == rhs);
        }
    Mat3 expected;
    expected(0, 1) = -1;
    expected(1, 0) = -1;
    CHECK(anticommutator(e[1], e[2]) == expected);
    RationalSampler g(2);
    const Mat3 a = random_mat(g);
    CHECK(anticommutator(Mat3::identity(), a) == a * Rat(2));
}

TEST_CASE("bracket parity properties on random matrices") {
    RationalSampler g(17);
    for (int n = 0; n < 100; ++n) {
        const Mat3 a = random_mat(g), b = random_mat(g);
        CHECK(commutator(a, b) == -commutator(b, a));
        CHECK(anticommutator(a, b) == anticommutator(b, a));
        const Mat3 sk = a - a.transpose(), sk2 = b - b.transpose();
        const Mat3 sy = a + a.transpose(), sy2 = b + b.transpose();
        CHECK(sk.is_skew());
        CHECK(sy.is_symmetric());
        CHECK(commutator(sk, sy).is_symmetric());
        CHECK(commutator(sk, sk2).is_skew());
        CHECK(anticommutator(sy, sy2).is_symmetric());
    }
}

TEST_CASE("trace and determinant") {
    CHECK(Mat3::diag(1, 2, 3).det() == 6);
    CHECK(Mat3::diag(1, 2, 3).trace() == 6);
    CHECK((Mat3::identity() * Rat(-1, 2)).det() == Rat(-1, 8));
    CHECK(e[0].det() == 0);
}

TEST_CASE("solve_linear: identity, zero map, inconsistency") {
    RatMatrix id(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
    const RatVector v{Rat(1, 2), Rat(-3), Rat(7, 5)};
    const auto r = solve_linear(id, v);
    REQUIRE(r.unique());
    CHECK(*r.particular == v);
    CHECK(r.rank == 3);

    const auto z = solve_linear(RatMatrix(2, 4), RatVector(2));
    CHECK(z.kernel_basis.size() == 4);
    CHECK(z.rank == 0);

    RatMatrix a(2, 1);
    a(0, 0) = 1;
    a(1, 0) = 1;
    CHECK(!solve_linear(a, {Rat(1), Rat(2)}).consistent());
    CHECK_THROWS(solve_linear(a, {Rat(1)}));
}

TEST_CASE("solve_linear solutions satisfy the system (random)") {
    RationalSampler g(23);
    for (int n = 0; n < 40; ++n) {
        const std::size_t rows = static_cast<std::size_t>(g.uniform(1, 5)), cols = static_cast<std::size_t>(g.uniform(1, 5));
        RatMatrix a(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) a(r, c) = g.uniform(0, 2) == 0 ? Rat(0) : g.rational();
        RatVector x0(cols);
        for (auto& x : x0) x = g.rational();
        const RatVector b = a.apply(x0);
        const auto res = solve_linear(a, b);
        REQUIRE(res.consistent());
        CHECK(res.rank + res.kernel_basis.size() == cols);
        RatVector x = *res.particular;
        for (const auto& k : res.kernel_basis) {
            CHECK(a.apply(k) == RatVector(rows));
            const Rat c = g.rational();
            for (std::size_t i = 0; i < cols; ++i) x[i] += c * k[i];
        }
        CHECK(a.apply(x) == b);
    }
}

TEST_CASE("sparse system matches dense elimination") {
    RationalSampler g(29);
    for (int n = 0; n < 30; ++n) {
        const std::size_t rows = 6, cols = 5;
        RatMatrix a(rows, cols);
        SparseSystem s(cols);
        RatVector b(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            SparseSystem::Row row;
            for (std::size_t c = 0; c < cols; ++c)
                if (g.uniform(0, 2) == 0) {
                    a(r, c) = g.rational();
                    if (!is_zero(a(r, c))) row[c] = a(r, c);
                }
            b[r] = g.uniform(0, 1) ? g.rational() : Rat(0);
            s.add_equation(row, b[r]);
        }
        const auto dense = solve_linear(a, b);
        const auto sparse = s.solve();
        CHECK(dense.consistent() == s.consistent());
        CHECK(dense.rank == sparse.rank);
        if (dense.consistent()) CHECK(a.apply(*sparse.particular) == b);
    }
}

TEST_CASE("express_in_span") {
    const auto r = express_in_span(e[2], {e[0], e[1], e[2]});
    REQUIRE(r.found());
    CHECK(*r.coefficients == RatVector{0, 0, 1});
    CHECK(r.kernel.empty());
    CHECK(!express_in_span(Mat3::identity(), {e[0], e[1], e[2]}).found());
    const auto dup = express_in_span(e[0], {e[0], e[0] * Rat(2)});
    REQUIRE(dup.found());
    CHECK(dup.kernel.size() == 1);
    CHECK(combine({e[0], e[0] * Rat(2)}, *dup.coefficients) == e[0]);
}

TEST_CASE("jets: first-order arithmetic with truncation counting") {
    Jet::truncations() = 0;
    const Jet x = Jet::variable(0, Rat(2)), y = Jet::variable(1, Rat(3));
    const Jet s = x + y * Rat(2);
    CHECK(s.value() == 8);
    CHECK(s.grad().size() == 2);
    const Jet p = x * y;
    CHECK(p.value() == 6);
    CHECK(Jet::truncations() == 1);
    CHECK(p.grad() == Jet::Grad{{0, Rat(3)}, {1, Rat(2)}});
    const Jet c = Jet(Rat(5)) * x;
    CHECK(c.grad() == Jet::Grad{{0, Rat(5)}});
    CHECK(Jet::truncations() == 1);
    CHECK(is_zero(x - x));
}
