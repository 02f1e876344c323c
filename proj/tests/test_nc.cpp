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

#include <skrw/discovery.hpp>
#include <skrw/ncpoly.hpp>
#include <skrw/sampling.hpp>

using namespace skrw;

namespace {

using P = NCPoly<Rat>;

P g(int l, const Rat& c = 1) { return P::gen(l, c); }
P w(std::initializer_list<int> letters, const Rat& c = 1) { return P::term(make_word(letters), c); }

/// Reduces by rewriting a randomly chosen out-of-order position each step.
P random_reduce(const P& p, const Reducer<Rat>& red, std::mt19937_64& eng) {
    P cur = p, done;
    while (!cur.is_zero()) {
        P next;
        for (const auto& [word, c] : cur.terms()) {
            std::vector<std::size_t> spots;
            for (std::size_t i = 0; i + 1 < word.size(); ++i)
                if (letter(word, i) > letter(word, i + 1)) spots.push_back(i);
            if (spots.empty()) {
                done.add_term(word, c);
                continue;
            }
            next.add_scaled(red.rewrite_at(word, spots[eng() % spots.size()]), c);
        }
        cur = std::move(next);
    }
    return done;
}

/// Sklyanin part (Q, S1..S3) of the formal table at a parameter point.
NCTable<Rat> sklyanin_table(const SklyaninParams& p) {
    const auto r = realize(p);
    const auto full = skrw_table<Rat>(SkRwData{expand_f(r).coefficients, Rat(0)}, RatVector(kXiCount), RatVector(kTtCount));
    NCTable<Rat> t({"Q", "S1", "S2", "S3"});
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) t.set(a, b, full(a, b));
    return t;
}

NWSOStructure diagonal_structure() {
    const auto r = realize(SklyaninParams::diagonal_point());
    const auto l1 = solve_lemma1(r.s, r.q);
    const SkRwData d{expand_f(r).coefficients, l1.family->kappa};
    const auto l2 = solve_lemma2(r, *l1.family, d);
    const auto tt = solve_tt(r, *l1.family, d, l2.xi);
    return assemble_structure(r, d, *l1.family, l2.xi, tt.c);
}

}  // namespace

TEST_CASE("normal form of S2 S1 at the diagonal point") {
    const auto rs = RewriteSystem<Rat>::build(sklyanin_table(SklyaninParams::diagonal_point()));
    // S2 S1 = S1 S2 - (Q S3 + S3 Q), and S3 Q = Q S3 there.
    CHECK(normal_form(w({2, 1}), rs) == w({1, 2}) - w({0, 3}, 2));
    CHECK(normal_form(w({1, 2, 3}), rs) == w({1, 2, 3}));
    CHECK(normal_form(P::constant(5), rs) == P::constant(5));
}

TEST_CASE("normal forms evaluate to the same matrices") {
    const auto s = diagonal_structure();
    const auto letters = letter_matrices(realize(SklyaninParams::diagonal_point()), s.family);
    Reducer<Rat> red(s.rules);
    for (const auto& word : {make_word({2, 1}), make_word({3, 0}), make_word({3, 2, 1}), make_word({5, 1}), make_word({8, 4}),
                             make_word({7, 3, 1}), make_word({6, 2, 0})}) {
        const P nf = red.normal_form(P::term(word, 1));
        for (const auto& [v, c] : nf.terms()) CHECK(is_ordered(v));
        CHECK(evaluate(nf, letters) == evaluate(P::term(word, 1), letters));
    }
}

TEST_CASE("quadratic F breaks termination in the fixed letter order (recorded finding)") {
    // Off F = 0 some F_i contains a word above S_i Q, e.g. S2 S3 in F_1.
    for (const auto& p : sample_params(3, 5, true)) {
        const auto rs = RewriteSystem<Rat>::build(sklyanin_table(p));
        CHECK(!rs.non_decreasing_rules().empty());
        Reducer<Rat> red(rs);
        bool cycled = false;
        try {
            for (const auto& w3 : {make_word({1, 2, 1}), make_word({1, 3, 1}), make_word({2, 3, 2})}) red.normal_form(P::term(w3, 1));
        } catch (const Error& e) {
            cycled = e.kind() == ErrorKind::non_terminating;
        }
        CHECK(cycled);
        const auto rep = diamond_check(rs);
        CHECK(!rep.passed());
    }
}

TEST_CASE("normal form is linear and idempotent") {
    const auto rs = RewriteSystem<Rat>::build(sklyanin_table(SklyaninParams::diagonal_point()));
    Reducer<Rat> red(rs);
    RationalSampler s(8);
    for (int n = 0; n < 30; ++n) {
        P a, b;
        for (int k = 0; k < 3; ++k) {
            a.add_term(make_word({static_cast<int>(s.uniform(0, 3)), static_cast<int>(s.uniform(0, 3)), static_cast<int>(s.uniform(0, 3))}), s.rational());
            b.add_term(make_word({static_cast<int>(s.uniform(0, 3)), static_cast<int>(s.uniform(0, 3))}), s.rational());
        }
        const P na = red.normal_form(a), nb = red.normal_form(b);
        CHECK(red.normal_form(a + b) == na + nb);
        CHECK(red.normal_form(na) == na);
    }
}

TEST_CASE("degree cap") {
    const auto rs = RewriteSystem<Rat>::build(u_so3_table(), 3);
    Reducer<Rat> red(rs);
    CHECK_THROWS_AS(red.normal_form(w({2, 1, 0, 0})), Error);
    try {
        red.normal_form(w({2, 1, 0, 0}));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degree_cap);
    }
}

TEST_CASE("diamond check on U(so(3)) and random-order reduction") {
    const auto rs = RewriteSystem<Rat>::build(u_so3_table());
    const auto rep = diamond_check(rs);
    CHECK(rep.checked == 1);
    CHECK(rep.passed());
    Reducer<Rat> red(rs);
    std::mt19937_64 eng(99);
    RationalSampler s(4);
    for (int n = 0; n < 100; ++n) {
        P p;
        for (int k = 0; k < 3; ++k)
            p.add_term(make_word({static_cast<int>(s.uniform(0, 2)), static_cast<int>(s.uniform(0, 2)), static_cast<int>(s.uniform(0, 2))}), s.rational());
        const P a = random_reduce(p, red, eng), b = random_reduce(p, red, eng);
        CHECK(a == b);
        CHECK(a == red.normal_form(p));
    }
}

TEST_CASE("diamond check on the Sklyanin part") {
    const auto rs = RewriteSystem<Rat>::build(sklyanin_table(SklyaninParams::diagonal_point()));
    CHECK(rs.non_decreasing_rules().empty());
    CHECK(diamond_check(rs).passed());
}

TEST_CASE("diamond check on the discovered structure and a corrupted copy") {
    const auto s = diagonal_structure();
    const auto rep = diamond_check(s.rules);
    CHECK(rep.checked == 84);
    // Recorded finding: only T T T overlaps fail.
    CHECK(rep.failures.size() == 9);
    for (const auto& o : rep.failures)
        for (std::size_t i = 0; i < 3; ++i) CHECK(is_t_letter(letter(o.word, i)));

    NCTable<Rat> bad = s.table;
    const int a = letter_t(0), b = letter_t(2);
    P entry = bad(a, b);
    entry.add_term(make_word({letter_s(0), letter_t(1)}), 1);
    bad.set(a, b, entry);
    const auto bad_rep = diamond_check(RewriteSystem<Rat>::build(bad, 3));
    CHECK(bad_rep.failures.size() > rep.failures.size());
}

TEST_CASE("Weyl symmetrization") {
    CHECK(weyl_symmetrize(make_word({0, 1})) == w({0, 1}, Rat(1, 2)) + w({1, 0}, Rat(1, 2)));
    CHECK(weyl_symmetrize(make_word({0, 0})) == w({0, 0}));
    const P xyz = weyl_symmetrize(make_word({2, 0, 1}));
    CHECK(xyz.size() == 6);
    Rat sum = 0;
    for (const auto& [v, c] : xyz.terms()) {
        CHECK(c == Rat(1, 6));
        sum += c;
    }
    CHECK(sum == 1);
    CHECK(weyl_symmetrize(make_word({0, 0, 1})).size() == 3);
    CHECK_THROWS_AS(weyl_symmetrize(make_word({0, 1, 2, 0}), 3), Error);
}

TEST_CASE("ordering independence") {
    const auto s = diagonal_structure();
    // Whole [T, T] right-hand sides: all three readings agree.
    std::vector<std::pair<std::string, CPoly>> rhs;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) {
            CPoly c(9);
            for (const auto& [v, k] : s.table(letter_t(a), letter_t(b)).terms()) {
                CMonomial m(9, 0);
                for (std::size_t i = 0; i < v.size(); ++i) ++m[static_cast<std::size_t>(letter(v, i))];
                c.add_term(m, k);
            }
            rhs.emplace_back(std::to_string(a) + std::to_string(b), c);
        }
    CHECK(ordering_independence_check(s.rules, rhs).passed());
    // A single term S1 T12 is not ordering independent.
    CMonomial m(9, 0);
    m[static_cast<std::size_t>(letter_s(0))] = 1;
    m[static_cast<std::size_t>(letter_t(2))] = 1;
    CPoly single(9);
    single.add_term(m, 1);
    CHECK(!ordering_independence_check(s.rules, {{"single", single}}).passed());
}

TEST_CASE("formal Jacobi on the Sklyanin part") {
    for (const auto& p : {SklyaninParams::diagonal_point()}) {
        const auto t = sklyanin_table(p);
        const auto rs = RewriteSystem<Rat>::build(t);
        Reducer<Rat> red(rs);
        CHECK(formal_jacobi(t, red, 1, 2, 3).is_zero());
        CHECK(formal_jacobi(t, red, 0, 0, 1).is_zero());
        for (int i = 1; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) CHECK(formal_jacobi(t, red, 0, i, j).is_zero());
    }
}

TEST_CASE("formal Jacobi with symbolic Xi is affine") {
    const auto r = realize(SklyaninParams::diagonal_point());
    const SkRwData d{expand_f(r).coefficients, Rat(4)};
    Jet::truncations() = 0;
    const auto tab = skrw_table<Jet>(d, detail::jets_at(RatVector(kXiCount), 0), std::vector<Jet>(kTtCount, Jet(0)));
    const auto rs = RewriteSystem<Jet>::build(tab);
    Reducer<Jet> red(rs);
    const auto res = formal_jacobi(tab, red, kLetterQ, letter_s(0), letter_t(4));
    REQUIRE(!res.is_zero());
    bool symbolic = false;
    for (const auto& [v, c] : res.terms()) symbolic = symbolic || !c.grad().empty();
    CHECK(symbolic);
}
