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

#ifndef SKRW_PIPELINE_HPP
#define SKRW_PIPELINE_HPP

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "classical.hpp"
#include "discovery.hpp"
#include "io.hpp"
#include "ncpoly.hpp"
#include "report.hpp"
#include "sampling.hpp"
#include "sklyanin.hpp"

namespace skrw {

// ---------------------------------------------------------------------------
// Witness helpers.

inline Json witness(const std::vector<JacobiFailure>& f, std::size_t limit = 20) {
    Json a = Json::array();
    for (std::size_t n = 0; n < f.size() && n < limit; ++n) a.push_back({{"triple", f[n].triple}, {"residual", f[n].residual}});
    return a;
}

inline Json witness(const MatrixCheck& m) {
    Json a = Json::array();
    for (const auto& [name, r] : m.failures) a.push_back({{"bracket", name}, {"residual", to_json(r)}});
    return a;
}

inline Json witness(const OverlapReport& o, const RewriteSystem<Rat>& rs, std::size_t limit = 20) {
    Json a = Json::array();
    for (std::size_t n = 0; n < o.failures.size() && n < limit; ++n)
        a.push_back({{"word", rs.word_name(o.failures[n].word)}, {"difference", o.failures[n].difference}});
    return a;
}

inline Json witness(const JacobiReport& rep, const BracketTable& tb, std::size_t limit = 20) {
    Json a = Json::array();
    const auto names = tb.names();
    for (std::size_t n = 0; n < rep.failures.size() && n < limit; ++n) {
        const auto& [t, r] = rep.failures[n];
        a.push_back({{"triple", "(" + names[t[0]] + ", " + names[t[1]] + ", " + names[t[2]] + ")"}, {"residual", r.to_string(names)}});
    }
    return a;
}

/// Commutative image of a word polynomial (letters sorted).
inline CPoly commutative_image(const NCPoly<Rat>& p, std::size_t nvars) {
    CPoly out(nvars);
    for (const auto& [w, c] : p.terms()) {
        CMonomial m(nvars, 0);
        for (std::size_t i = 0; i < w.size(); ++i) ++m[static_cast<std::size_t>(letter(w, i))];
        out.add_term(m, c);
    }
    return out;
}

inline std::string count_summary(std::size_t bad, std::size_t total, const std::string& what) {
    return std::to_string(total - bad) + "/" + std::to_string(total) + " " + what;
}

// ---------------------------------------------------------------------------
// realize

/// Realization-level checks shared by `realize` and `sweep`.
inline Report realization_checks(const SklyaninParams& p, Json* data = nullptr) {
    Report rep("realize");
    const STriple s = build_s(p);
    if (!linearly_independent(s)) {
        rep.add("realization", Status::fail, "S1, S2, S3 are linearly dependent", {{"parameters", params_json(p)}});
        return rep;
    }
    const auto sys = q_linear_system(s);
    if (!sys.consistent()) {
        rep.add("realization", Status::finding, "no symmetric Q satisfies the commutation relations", {{"parameters", params_json(p)}});
        return rep;
    }
    if (!sys.kernel_basis.empty()) {
        Json k = Json::array();
        for (const auto& v : sys.kernel_basis) k.push_back(to_json(from_sym_coords(v)));
        rep.add("q-unique", Status::finding, "symmetric Q is not unique (kernel dimension " + std::to_string(sys.kernel_basis.size()) + ")",
                {{"parameters", params_json(p)}, {"kernel", k}});
        return rep;
    }
    rep.add("q-unique", Status::pass, "symmetric Q is unique (kernel dimension 0)");
    const SklyaninRealization r{p, s, from_sym_coords(*sys.particular)};

    const auto rel = relation_residuals(r.s, r.q);
    bool rel_ok = std::all_of(rel.begin(), rel.end(), [](const Mat3& m) { return m.is_zero(); });
    rep.add("relations", rel_ok ? Status::pass : Status::fail, rel_ok ? "[S_i, S_j] = eps (Q S_k + S_k Q) holds exactly" : "relation residual nonzero",
            rel_ok ? Json::object() : Json{{"parameters", params_json(p)}, {"residuals", {to_json(rel[0]), to_json(rel[1]), to_json(rel[2])}}});

    for (QFormula form : {QFormula::printed, QFormula::amended}) {
        const std::string name = std::string("q-closed-form-") + to_string(form);
        try {
            const Mat3 qc = q_closed_form(p, form);
            if (qc == r.q)
                rep.add(name, Status::pass, "closed form equals the linear-system Q");
            else
                rep.add(name, Status::finding, "closed form differs from the linear-system Q",
                        {{"parameters", params_json(p)}, {"closed_form", to_json(qc)}, {"linear_system", to_json(r.q)}, {"difference", to_json(qc - r.q)}});
        } catch (const Error& e) {
            rep.add(name, Status::pass, std::string("not applicable: ") + e.what());
        }
    }

    const auto orth = orthogonality_report(r);
    rep.add("det-q", orth.nondegenerate() ? Status::pass : Status::finding, "det Q = " + to_string(orth.det_q),
            orth.nondegenerate() ? Json::object() : Json{{"parameters", params_json(p)}, {"Q", to_json(r.q)}});
    rep.add("q-orthogonality", orth.orthogonal() ? Status::pass : Status::finding,
            orth.orthogonal() ? "tr(S_i Q S_j + S_j Q S_i) = 0 for i != j" : "some S_i, S_j are not Q-orthogonal",
            orth.orthogonal() ? Json::object()
                              : Json{{"parameters", params_json(p)},
                                     {"values", {to_string(orth.q_orthogonality[0]), to_string(orth.q_orthogonality[1]), to_string(orth.q_orthogonality[2])}}});
    const bool pattern = p.on_locus_pattern();
    rep.add("locus-equivalence", pattern == orth.on_locus ? Status::pass : Status::fail,
            std::string("beta = delta = epsilon = 0 is ") + (pattern ? "true" : "false") + " and tr(S_i S_j) = 0 (i != j) is " + (orth.on_locus ? "true" : "false"),
            pattern == orth.on_locus ? Json::object() : Json{{"parameters", params_json(p)}});

    std::optional<QuadExpansion> fx;
    try {
        fx = expand_f(r);
        rep.add("f-expansion", Status::pass, "[Q, S_i] expands in the symmetrized products S_j S_k");
    } catch (const Error& e) {
        rep.add("f-expansion", Status::finding, e.what(), {{"parameters", params_json(p)}});
    }
    if (fx && fx->on_locus) {
        const bool ok = fx->identity_holds();
        rep.add("j-identity", ok ? Status::pass : Status::finding,
                "J12 + J23 + J31 + J12 J23 J31 = " + to_string(*fx->identity_residual) + " (single-count J)",
                ok ? Json::object()
                   : Json{{"parameters", params_json(p)}, {"J12", to_string(*fx->j12)}, {"J23", to_string(*fx->j23)}, {"J31", to_string(*fx->j31)}});
        rep.add("locus-shape", fx->locus_shape_ok ? Status::pass : Status::finding,
                fx->locus_shape_ok ? "F_i involves only S_j S_k + S_k S_j with (i, j, k) cyclic" : "F_i has extra quadratic terms on the locus");
    }

    try {
        const auto m = find_multipliers(r.q, r.s[0], r.s[1]);
        const auto res = multiplier_residuals(r.q, r.s[0], r.s[1], m);
        const bool ok = std::all_of(res.begin(), res.end(), [](const Mat3& x) { return x.is_zero(); });
        rep.add("reconstruction", ok ? Status::pass : Status::fail,
                "S3 from (Q, S1, S2): mu1 = " + to_string(m.mu1) + ", mu2 = " + to_string(m.mu2));
    } catch (const Error& e) {
        rep.add("reconstruction", Status::finding, e.what(), {{"parameters", params_json(p)}});
    }

    if (data) {
        *data = realization_json(r);
        if (fx) {
            Json f = Json::object();
            for (std::size_t i = 0; i < 3; ++i) f["F" + std::to_string(i + 1)] = to_json(fx->coefficients[i]);
            (*data)["F_coefficients"] = f;
            (*data)["F_basis"] = "S1S1, S2S2, S3S3, S1S2+S2S1, S1S3+S3S1, S2S3+S3S2 (squares counted once)";
            if (fx->on_locus)
                (*data)["J"] = {{"J12", to_string(*fx->j12)}, {"J23", to_string(*fx->j23)}, {"J31", to_string(*fx->j31)}};
        }
        (*data)["det_Q"] = to_string(orth.det_q);
    }
    return rep;
}

inline Report run_realize(const RunConfig& cfg) {
    Json data;
    Report rep = realization_checks(cfg.params, &data);
    rep.extra() = std::move(data);
    return rep;
}

// ---------------------------------------------------------------------------
// classical-check

inline Report run_classical_check(const RunConfig&) {
    Report rep("classical-check");
    Json data = Json::object();
    for (StForm form : {StForm::corrected, StForm::literal})
        for (Presentation pres : {Presentation::eliminated, Presentation::untraced}) {
            const auto tb = rw_so3_table(form, pres);
            const std::string tag = std::string(to_string(form)) + "-" + to_string(pres);
            const auto jr = jacobi_report(tb);
            Json kinds = Json::object();
            for (const auto& [k, n] : failure_kinds(tb, jr)) kinds[k] = n;
            rep.add("jacobi-" + tag, jr.passed() ? Status::pass : Status::finding,
                    count_summary(jr.failures.size(), jr.triples_checked, "triples with zero Jacobi residual"),
                    jr.passed() ? Json::object() : Json{{"failure_kinds", kinds}, {"failures", witness(jr, tb)}});
            data[tag] = {{"triples", jr.triples_checked}, {"failures", jr.failures.size()}, {"failure_kinds", kinds}};
            if (pres == Presentation::eliminated) {
                rep.add("antisymmetry-" + tag, antisymmetric(tb) ? Status::pass : Status::fail, "table is antisymmetric");
                rep.add("grading-" + tag, grading_ok(tb) ? Status::pass : Status::fail, "deg{a, b} = deg a + deg b - 1 with deg s = 1, deg t = 2");
            }
        }
    rep.add("so3-block", ss_block_is_so3(rw_so3_table()) ? Status::pass : Status::fail, "{s_i, s_j} = eps_ijk s_k");
    for (StForm form : {StForm::corrected, StForm::literal}) {
        const auto ec = elimination_consistency(form);
        Json w = Json::array();
        for (const auto& [g, d] : ec.mismatches) w.push_back({{"generator", g}, {"difference", d.to_string(rw_so3_table(form).names())}});
        rep.add(std::string("trace-elimination-") + to_string(form), ec.consistent() ? Status::pass : Status::finding,
                ec.consistent() ? "t33 = -t11 - t22 commutes with bracketing" : std::to_string(ec.mismatches.size()) + " generators where eliminating t33 changes {x, t33}",
                ec.consistent() ? Json::object() : Json{{"mismatches", w}});
    }

    // Ordering independence of the {t, t} right-hand sides.
    const auto tb = rw_so3_table();
    std::vector<std::pair<std::string, CPoly>> rhs;
    for (std::size_t a = 3; a < tb.size(); ++a)
        for (std::size_t b = a + 1; b < tb.size(); ++b) rhs.emplace_back(tb.gens[a].name() + "," + tb.gens[b].name(), tb.entry[a][b]);
    bool image_ok = true;
    for (const auto& [name, p] : rhs)
        for (Ordering o : {Ordering::left, Ordering::right, Ordering::weyl})
            image_ok = image_ok && commutative_image(lift(p, o), tb.size()) == p;
    rep.add("ordering-independence", image_ok ? Status::pass : Status::fail, "left, right and Weyl lifts agree in the commutative image");
    const auto q = quantize(tb);
    const auto rs = RewriteSystem<Rat>::build(q, 3);
    const auto oi = ordering_independence_check(rs, rhs);
    std::size_t bad = 0;
    Json w = Json::array();
    for (const auto& e : oi.entries)
        if (!e.agree) {
            ++bad;
            w.push_back({{"pair", e.pair}, {"left", e.normal_forms[0]}, {"right", e.normal_forms[1]}, {"weyl", e.normal_forms[2]}});
        }
    rep.add("ordering-independence-quantized", bad == 0 ? Status::pass : Status::finding,
            count_summary(bad, oi.entries.size(), "{t, t} entries with equal normal forms under Weyl-quantized rules"),
            bad == 0 ? Json::object() : Json{{"entries", w}});
    const auto dc = diamond_check(rs);
    rep.add("diamond-quantized", dc.passed() ? Status::pass : Status::finding,
            dc.error.empty() ? count_summary(dc.failures.size(), dc.checked, "degree-3 overlaps resolve") : dc.error,
            dc.passed() ? Json::object() : Json{{"overlaps", witness(dc, rs)}});
    data["decisions"] = {{"st_form_default", "corrected"}, {"presentation_default", "eliminated"}};
    rep.extra() = std::move(data);
    return rep;
}

// ---------------------------------------------------------------------------
// discover

struct DiscoveryOutcome {
    Report report{"discover"};
    std::optional<NWSOStructure> structure;
};

/// Shape, sigma, (T, T, T), diamond and ordering checks on an assembled
/// or parsed structure.
inline void structure_checks(Report& rep, const NWSOStructure& s) {
    const auto bad_shape = tt_shape_violations(s.table);
    Json sw = Json::array();
    for (const auto& b : bad_shape) sw.push_back(b);
    rep.add("tt-shape", bad_shape.empty() ? Status::pass : Status::finding,
            bad_shape.empty() ? "every [T, T] word is S_m T or T S_m" : std::to_string(bad_shape.size()) + " [T, T] entries outside the declared form",
            bad_shape.empty() ? Json::object() : Json{{"pairs", sw}});
    Json sg = Json::array();
    for (const auto& [k, p] : s.sigma)
        if (!p.is_zero()) sg.push_back({{"pair", k}, {"terms", to_json(p, skrw_letters())}});
    rep.add("sigma", s.sigma_zero() ? Status::pass : Status::finding, s.sigma_zero() ? "sigma = 0" : "[T, T] has terms without a T letter",
            s.sigma_zero() ? Json::object() : Json{{"sigma", sg}});

    const auto ttt = formal_jacobi_failures(s.table, s.rules, triples_of_family("TTT"));
    rep.add("jacobi-TTT", ttt.empty() ? Status::pass : Status::finding,
            count_summary(ttt.size(), triples_of_family("TTT").size(), "(T, T, T) triples with zero formal residual"),
            ttt.empty() ? Json::object() : Json{{"failures", witness(ttt)}});

    const auto dc = diamond_check(s.rules);
    rep.add("diamond", dc.passed() ? Status::pass : Status::finding,
            dc.error.empty() ? count_summary(dc.failures.size(), dc.checked, "degree-3 overlaps resolve") : dc.error,
            dc.passed() ? Json::object() : Json{{"overlaps", witness(dc, s.rules)}});

    // Left (S before T), right (T before S) and Weyl readings of each [T, T].
    std::vector<std::pair<std::string, CPoly>> rhs;
    for (int g = 0; g < 5; ++g)
        for (int h = g + 1; h < 5; ++h)
            rhs.emplace_back(detail::t_name(g) + "," + detail::t_name(h), commutative_image(s.table(letter_t(g), letter_t(h)), 9));
    const auto oi = ordering_independence_check(s.rules, rhs);
    std::size_t bad = 0;
    Json w = Json::array();
    for (const auto& e : oi.entries)
        if (!e.agree) {
            ++bad;
            w.push_back({{"pair", e.pair}, {"left", e.normal_forms[0]}, {"right", e.normal_forms[1]}, {"weyl", e.normal_forms[2]}});
        }
    rep.add("ordering-independence", bad == 0 ? Status::pass : Status::finding,
            count_summary(bad, oi.entries.size(), "[T, T] entries with equal left/right/Weyl normal forms"),
            bad == 0 ? Json::object() : Json{{"entries", w}});
}

inline DiscoveryOutcome discover(const SklyaninParams& p, std::size_t degree_cap = 3) {
    DiscoveryOutcome out;
    Report& rep = out.report;
    Json data;
    data["parameters"] = params_json(p);
    auto stop = [&](const std::string& name, Status st, const std::string& why, Json detail = Json::object()) {
        rep.add(name, st, why, std::move(detail));
        rep.extra() = data;
        return out;
    };

    SklyaninRealization r;
    try {
        r = realize(p);
    } catch (const Error& e) {
        return stop("realization", Status::fail, e.what(), {{"parameters", params_json(p)}});
    }
    data["Q"] = to_json(r.q);
    QuadExpansion fx;
    try {
        fx = expand_f(r);
    } catch (const Error& e) {
        return stop("f-expansion", Status::finding, e.what(), {{"parameters", params_json(p)}});
    }

    const auto l1 = solve_lemma1(r.s, r.q);
    data["t_system"] = {{"kernel_dimension", l1.kernel.size()}, {"traceless_rank", l1.traceless_rank}};
    rep.add("t-kernel", l1.kernel.empty() ? Status::finding : Status::pass, "T-system kernel dimension " + std::to_string(l1.kernel.size()),
            l1.kernel.empty() ? Json{{"parameters", params_json(p)}} : Json::object());
    rep.add("t-traceless-unique", l1.unique_up_to_multiple ? Status::pass : Status::finding,
            "traceless parts span dimension " + std::to_string(l1.traceless_rank) + " across the kernel",
            l1.unique_up_to_multiple ? Json::object() : Json{{"parameters", params_json(p)}});
    rep.add("t-trace", l1.trace_proportional_to_q ? Status::pass : Status::finding,
            l1.trace_proportional_to_q ? "a kernel element has T11 + T22 + T33 = kappa Q, kappa != 0" : "no kernel element has trace part proportional to Q",
            l1.trace_proportional_to_q ? Json::object() : Json{{"parameters", params_json(p)}});
    if (l1.candidate_in_span)
        rep.add("t-candidate", *l1.candidate_in_span ? Status::pass : Status::finding, "T_jk = S_j S_k + S_k S_j solves the T-system");
    if (!l1.family) return stop("t-family", Status::finding, "no T-family to continue with", {{"parameters", params_json(p)}});
    const TFamily& fam = *l1.family;
    if (l1.pairwise_q_orthogonal)
        rep.add("t-pairwise-q-orthogonal", *l1.pairwise_q_orthogonal ? Status::pass : Status::finding, "tr(T_a Q T_b + T_b Q T_a) = 0 for a != b");
    if (l1.mixed_q_orthogonal)
        rep.add("t-mixed-q-orthogonal", *l1.mixed_q_orthogonal ? Status::pass : Status::finding, "tr(S_i Q T_jk + T_jk Q S_i) = 0");
    data["kappa"] = to_string(fam.kappa);
    Json tm = Json::object();
    for (std::size_t n = 0; n < 6; ++n) tm["T" + pair_name(n)] = to_json(fam.t[n]);
    data["T_matrices"] = tm;

    const SkRwData d{fx.coefficients, fam.kappa};
    Lemma2Result l2;
    try {
        l2 = solve_lemma2(r, fam, d, degree_cap);
    } catch (const Error& e) {
        return stop("xi", Status::finding, e.what(), {{"parameters", params_json(p)}});
    }
    if (!l2.converged) return stop("xi", Status::finding, "no Xi table found after " + std::to_string(l2.iterations) + " steps");
    rep.add("xi-jacobi", l2.residual_failures.empty() ? Status::pass : Status::fail,
            "formal (Q, S, T) and (S, S, T) residuals vanish (" + std::to_string(l2.iterations) + " Newton step(s))",
            l2.residual_failures.empty() ? Json::object() : Json{{"failures", witness(l2.residual_failures)}});
    rep.add("xi-matrix", l2.matrix.passed() ? Status::pass : Status::fail, "[Q, T] evaluates to Xi(T)",
            l2.matrix.passed() ? Json::object() : Json{{"residuals", witness(l2.matrix)}});
    rep.add("xi-unique", l2.combined_kernel_dimension == 0 ? Status::pass : Status::finding,
            "Xi solution-set dimension " + std::to_string(l2.combined_kernel_dimension) + " (formal equations alone: " +
                std::to_string(l2.formal_kernel_dimension) + ")");

    TTResult tt;
    try {
        tt = solve_tt(r, fam, d, l2.xi, degree_cap);
    } catch (const Error& e) {
        return stop("tt", Status::finding, e.what(), {{"parameters", params_json(p)}});
    }
    rep.add("tt-jacobi", tt.residual_failures.empty() ? Status::pass : Status::fail, "formal (S, T, T) and (Q, T, T) residuals vanish",
            tt.residual_failures.empty() ? Json::object() : Json{{"failures", witness(tt.residual_failures)}});
    rep.add("tt-matrix", tt.matrix.passed() ? Status::pass : Status::fail, "[T, T] evaluates to the matrix commutators",
            tt.matrix.passed() ? Json::object() : Json{{"residuals", witness(tt.matrix)}});
    rep.add("tt-declared-form", tt.declared_form_consistent ? Status::pass : Status::finding,
            tt.declared_form_consistent ? "a [T, T] table linear in S exists" : "every [T, T] solution needs S Q + Q S terms");
    Json kern = Json::array();
    for (const auto& k : tt.kernel) kern.push_back(to_json(k));
    rep.add("tt-unique", tt.unique() ? Status::pass : Status::finding,
            "[T, T] solution-set dimension " + std::to_string(tt.kernel.size()) + " in the declared form (" + std::to_string(tt.full_kernel_dimension) +
                " with S Q terms allowed, " + std::to_string(tt.formal_kernel_dimension) + " from the formal equations alone)",
            tt.unique() ? Json::object() : Json{{"particular", to_json(tt.c)}, {"directions", kern}});
    const auto ttt = ttt_report(d, l2.xi, tt, degree_cap);
    if (!ttt.failures.empty())
        rep.add("ttt-family", ttt.outcome == TTTReport::FamilyOutcome::member_found ? Status::pass : Status::finding,
                std::string("(T, T, T) over the [T, T] solution family: ") + to_string(ttt.outcome),
                ttt.outcome == TTTReport::FamilyOutcome::member_found ? Json{{"member", to_json(ttt.member)}} : Json::object());

    if (is_diagonal_point(r)) {
        for (StForm form : {StForm::corrected, StForm::literal}) {
            const auto fit = classical_fit(r, tt, rw_so3_table(form));
            Json w = Json::object();
            if (!fit.exact) w = {{"mismatched_pairs", fit.mismatched_pairs}};
            rep.add(std::string("classical-fit-") + to_string(form), fit.exact ? Status::pass : Status::finding,
                    fit.exact ? "T~ = mu t with mu = " + to_string(*fit.mu) : "no global rescaling of T matches the classical {t, t} table", w);
            if (fit.mu) data[std::string("classical_fit_scale_") + to_string(form)] = to_string(*fit.mu);
        }
        const auto rc = rescaling_covariance(r, fam, d, l2.xi, tt, Rat(3), degree_cap);
        rep.add("rescaling", rc.xi_unchanged && rc.tt_scaled ? Status::pass : Status::fail, "T -> 3 T keeps Xi and scales [T, T] by 3");
    }

    try {
        NWSOStructure s = assemble_structure(r, d, fam, l2.xi, tt.c, degree_cap);
        const auto full = matrix_check(s.table, letter_matrices(r, fam));
        rep.add("matrix", full.passed() ? Status::pass : Status::fail, "every bracket evaluates to the matrix commutator",
                full.passed() ? Json::object() : Json{{"residuals", witness(full)}});
        structure_checks(rep, s);
        out.structure = std::move(s);
    } catch (const Error& e) {
        rep.add("assemble", Status::finding, e.what());
    }
    rep.extra() = std::move(data);
    return out;
}

// ---------------------------------------------------------------------------
// verify

inline Report run_verify(const ParsedStructure& ps) {
    Report rep("verify");
    const NWSOStructure& s = ps.structure;
    Json w = Json::array();
    for (const auto& m : ps.map_mismatches) w.push_back(m);
    rep.add("maps", ps.map_mismatches.empty() ? Status::pass : Status::fail,
            ps.map_mismatches.empty() ? "R, T and sigma match the brackets" : std::to_string(ps.map_mismatches.size()) + " stored map entries differ",
            ps.map_mismatches.empty() ? Json::object() : Json{{"entries", w}});

    // The tables must be the ones the stored data generates.
    const auto expected = skrw_table<Rat>(s.data, s.xi, s.tt);
    Json diff = Json::array();
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b)
            if (!(expected(a, b) == s.table(a, b)))
                diff.push_back({{"bracket", "[" + skrw_letters()[static_cast<std::size_t>(a)] + ", " + skrw_letters()[static_cast<std::size_t>(b)] + "]"},
                                {"stored", s.table(a, b).to_string(skrw_letters())},
                                {"from_coefficients", expected(a, b).to_string(skrw_letters())}});
    rep.add("consistency", diff.empty() ? Status::pass : Status::fail,
            diff.empty() ? "brackets match the stored F, kappa, Xi and [T, T] coefficients" : std::to_string(diff.size()) + " brackets disagree with the stored coefficients",
            diff.empty() ? Json::object() : Json{{"brackets", diff}});

    SklyaninRealization r;
    try {
        r = realize(s.params);
    } catch (const Error& e) {
        rep.add("realization", Status::fail, e.what());
        return rep;
    }
    const auto res = lemma1_residuals(r.s, r.q, s.family.t);
    const bool t_ok = std::all_of(res.begin(), res.end(), [](const Mat3& m) { return m.is_zero(); }) && trace_part(s.family.t) == r.q * s.family.kappa;
    rep.add("t-matrices", t_ok ? Status::pass : Status::fail, "stored T matrices solve the T-system with trace kappa Q");
    try {
        const auto fx = expand_f(r);
        rep.add("f-coefficients", fx.coefficients == s.data.f ? Status::pass : Status::fail, "stored F coefficients match [Q, S_i]");
    } catch (const Error& e) {
        rep.add("f-coefficients", Status::fail, e.what());
    }
    const auto mc = matrix_check(s.table, letter_matrices(r, s.family));
    rep.add("matrix", mc.passed() ? Status::pass : Status::fail,
            mc.passed() ? "every bracket evaluates to the matrix commutator" : std::to_string(mc.failures.size()) + " brackets differ from the matrix commutators",
            mc.passed() ? Json::object() : Json{{"residuals", witness(mc)}});

    for (const auto& [name, triples] : {std::pair<std::string, std::vector<Triple>>{"jacobi-xi", lemma2_triples()}, {"jacobi-tt", tt_triples()}}) {
        const auto f = formal_jacobi_failures(s.table, s.rules, triples);
        rep.add(name, f.empty() ? Status::pass : Status::fail, count_summary(f.size(), triples.size(), "triples with zero formal residual"),
                f.empty() ? Json::object() : Json{{"failures", witness(f)}});
    }
    structure_checks(rep, s);
    return rep;
}

// ---------------------------------------------------------------------------
// sweep

/// Per-sample realization checks (and the T-system on locus samples),
/// run concurrently and assembled in sample order.
inline Report run_sweep(const RunConfig& cfg) {
    const auto samples = sample_params(cfg.seed, cfg.count, cfg.locus);
    std::vector<Report> items(samples.size(), Report("sweep-item"));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < samples.size(); i = next++) {
            Report r = realization_checks(samples[i]);
            if (cfg.locus) {
                const auto real = realize(samples[i]);
                const auto l1 = solve_lemma1(real.s, real.q);
                const bool ok = l1.claims_hold();
                r.add("t-family", ok ? Status::pass : Status::finding,
                      "T-system kernel " + std::to_string(l1.kernel.size()) + ", traceless rank " + std::to_string(l1.traceless_rank) +
                          ", trace proportional to Q: " + (l1.trace_proportional_to_q ? "yes" : "no"),
                      ok ? Json::object() : Json{{"parameters", params_json(samples[i])}});
            }
            items[i] = std::move(r);
        }
    };
    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(samples.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    }

    // Aggregate by check name, in first-seen order.
    struct Agg {
        std::size_t total = 0, pass = 0, fail = 0, finding = 0;
        Json witnesses = Json::array();
    };
    std::vector<std::string> order;
    std::map<std::string, Agg> agg;
    Json per = Json::array();
    for (std::size_t i = 0; i < items.size(); ++i) {
        Json entry;
        entry["index"] = i;
        entry["parameters"] = params_json(samples[i]);
        entry["status"] = to_string(items[i].overall());
        per.push_back(std::move(entry));
        for (const auto& c : items[i].checks()) {
            if (!agg.count(c.name)) order.push_back(c.name);
            Agg& a = agg[c.name];
            ++a.total;
            if (c.status == Status::pass) ++a.pass;
            if (c.status == Status::fail) ++a.fail;
            if (c.status == Status::finding) ++a.finding;
            if (c.status != Status::pass && a.witnesses.size() < 5) a.witnesses.push_back({{"index", i}, {"summary", c.summary}, {"detail", c.detail}});
        }
    }
    Report rep("sweep");
    for (const auto& name : order) {
        const Agg& a = agg[name];
        const Status st = a.fail ? Status::fail : (a.finding ? Status::finding : Status::pass);
        rep.add(name, st, std::to_string(a.pass) + "/" + std::to_string(a.total) + " samples pass",
                st == Status::pass ? Json::object() : Json{{"fail", a.fail}, {"finding", a.finding}, {"witnesses", a.witnesses}});
    }
    rep.extra() = {{"seed", cfg.seed}, {"count", cfg.count}, {"locus", cfg.locus}, {"sampler", "mt19937_64, |num| <= 20, 1 <= den <= 10, alpha gamma zeta nonzero"}, {"samples", per}};
    return rep;
}

}  // namespace skrw

#endif  // SKRW_PIPELINE_HPP
