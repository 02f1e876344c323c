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

#include <skrw/classical.hpp>
#include <skrw/sampling.hpp>
#include <skrw/sklyanin.hpp>

using namespace skrw;

namespace {

// Generator positions in the eliminated presentation.
constexpr std::size_t s1 = 0, s2 = 1, s3 = 2, t11 = 3, t22 = 4, t12 = 5, t13 = 6, t23 = 7;

CPoly var(std::size_t v, const Rat& c = 1) { return CPoly::variable(8, v, c); }

CPoly random_poly(RationalSampler& g) {
    CPoly p(8);
    const long terms = g.uniform(1, 4);
    for (long n = 0; n < terms; ++n) {
        CMonomial m(8, 0);
        const long deg = g.uniform(0, 2);
        for (long d = 0; d < deg; ++d) ++m[static_cast<std::size_t>(g.uniform(0, 7))];
        p.add_term(m, g.rational());
    }
    return p;
}

}  // namespace

TEST_CASE("so(3) basis matrices") {
    const auto e = so3_basis();
    CHECK(e[0](0, 1) == 1);
    CHECK(e[0](1, 0) == -1);
    Mat3 only;
    only(0, 1) = 1;
    only(1, 0) = -1;
    CHECK(e[0] == only);
    for (const auto& m : e) CHECK(m.is_skew());
}

TEST_CASE("bracket table entries") {
    const auto tb = rw_so3_table();
    REQUIRE(tb.size() == 8);
    CHECK(tb.names() == std::vector<std::string>{"s1", "s2", "s3", "t11", "t22", "t12", "t13", "t23"});
    CHECK(tb.entry[s1][s2] == var(s3));
    CHECK(tb.entry[s2][s1] == var(s3, -1));
    // eps_123 t33 + eps_132 t22 with t33 = -t11 - t22.
    CHECK(tb.entry[s1][t23] == var(t11, -1) + var(t22, -2));
    CHECK(tb.entry[t12][t12].is_zero());
    CHECK(ss_block_is_so3(tb));
    CHECK(antisymmetric(tb));
    CHECK(grading_ok(tb));
    CHECK(grading_ok(rw_so3_table(StForm::literal)));
    CHECK(rw_so3_table(StForm::corrected, Presentation::untraced).size() == 9);
}

TEST_CASE("the literal {s, t} reading repeats t_lk") {
    const auto lit = rw_so3_table(StForm::literal);
    // eps_123 t33 + eps_132 t23 with t33 = -t11 - t22.
    CHECK(lit.entry[s1][t23] == var(t11, -1) + var(t22, -1) + var(t23, -1));
    CHECK(!(lit.entry[s1][t23] == rw_so3_table().entry[s1][t23]));
}

TEST_CASE("poisson bracket: constants, Leibniz, antisymmetry") {
    const auto tb = rw_so3_table();
    RationalSampler g(41);
    CHECK(poisson_bracket(var(t12), CPoly::constant(8, 5), tb).is_zero());
    // {s1, s2 s3} = {s1, s2} s3 + s2 {s1, s3} = s3^2 - s2^2.
    CHECK(poisson_bracket(var(s1), var(s2) * var(s3), tb) == var(s3) * var(s3) - var(s2) * var(s2));
    for (int n = 0; n < 50; ++n) {
        const CPoly f = random_poly(g), h = random_poly(g), k = random_poly(g);
        CHECK((poisson_bracket(f, h, tb) + poisson_bracket(h, f, tb)).is_zero());
        CHECK((poisson_bracket(f, h * k, tb) - poisson_bracket(f, h, tb) * k - h * poisson_bracket(f, k, tb)).is_zero());
    }
}

TEST_CASE("Jacobi on selected triples") {
    const auto tb = rw_so3_table();
    CHECK(jacobi_residual(tb, s1, s2, s3).is_zero());
    CHECK(jacobi_residual(tb, s1, s2, t12).is_zero());
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b)
            for (std::size_t t = 3; t < 8; ++t) CHECK(jacobi_residual(tb, a, b, t).is_zero());
    // The literal reading already breaks equivariance.
    CHECK(!jacobi_residual(rw_so3_table(StForm::literal), s1, s2, t12).is_zero());
}

TEST_CASE("full Jacobi sweep outcome (recorded finding)") {
    const auto tb = rw_so3_table();
    const auto rep = jacobi_report(tb);
    CHECK(rep.triples_checked == 56);
    CHECK(rep.failures.size() == 18);
    const auto kinds = failure_kinds(tb, rep);
    CHECK(kinds == std::map<std::string, std::size_t>{{"stt", 8}, {"ttt", 10}});

    const auto lit = rw_so3_table(StForm::literal);
    const auto lrep = jacobi_report(lit);
    CHECK(lrep.failures.size() == 51);
    CHECK(failure_kinds(lit, lrep) == std::map<std::string, std::size_t>{{"sst", 13}, {"stt", 28}, {"ttt", 10}});

    const auto un = rw_so3_table(StForm::corrected, Presentation::untraced);
    const auto urep = jacobi_report(un);
    CHECK(urep.triples_checked == 84);
    CHECK(failure_kinds(un, urep) == std::map<std::string, std::size_t>{{"ttt", 19}});
}

TEST_CASE("trace elimination does not commute with bracketing (recorded finding)") {
    const auto ec = elimination_consistency(StForm::corrected);
    CHECK(!ec.consistent());
    for (const auto& [name, d] : ec.mismatches) CHECK(name[0] == 't');
}
