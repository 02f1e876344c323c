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

// skrw command-line driver. Exit codes: 0 pass, 1 usage or input error,
// 2 verification failure, 3 finding.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <skrw/pipeline.hpp>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw skrw::ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw skrw::ParseError("cannot write " + path);
    out << text;
    if (!out) throw skrw::ParseError("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for Sklyanin-type realizations and their tensor-operator extensions"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_path, params, out, in, report_path;
    std::optional<std::size_t> count, degree_cap;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    bool json = false, human = false, locus = false;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--params", params, "alpha,beta,gamma,delta,epsilon,zeta as exact rationals, e.g. 1,0,1,0,0,1");
    app.add_option("--out", out, "discover: structure file; other modes: report file");
    app.add_option("--in", in, "verify: structure file");
    app.add_option("--report", report_path, "discover: report file (default stdout)");
    app.add_option("--count", count, "sweep sample count (default 100)");
    app.add_option("--seed", seed, "sweep seed (default 7)");
    app.add_option("--degree-cap", degree_cap, "reduction degree cap (default 3)")->check(CLI::Range(3, 16));
    app.add_option("--threads", threads, "sweep worker threads (default: hardware)");
    app.add_flag("--locus", locus, "sweep: sample beta = delta = epsilon = 0");
    auto* fj = app.add_flag("--json", json, "JSON report (default)");
    auto* fh = app.add_flag("--human", human, "human-readable report");
    fj->excludes(fh);

    const std::vector<std::pair<skrw::Mode, std::string>> modes{
        {skrw::Mode::realize, "build S, solve for Q, check the realization"},
        {skrw::Mode::classical_check, "Jacobi and ordering checks on the classical bracket table"},
        {skrw::Mode::discover, "run the whole construction and emit the structure"},
        {skrw::Mode::verify, "re-check a structure file"},
        {skrw::Mode::sweep, "seeded realization checks over random parameters"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [m, help] : modes) subs.push_back(app.add_subcommand(skrw::to_string(m), help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    skrw::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = skrw::parse_config(read_file(config_path));
        for (std::size_t n = 0; n < subs.size(); ++n)
            if (subs[n]->parsed()) cfg.mode = modes[n].first;
        if (!cfg.mode) throw skrw::ParseError("no mode given: use a subcommand or mode = \"...\" in --config");
        if (!params.empty()) cfg.params = skrw::parse_params_list(params);
        if (!out.empty()) cfg.out = out;
        if (!in.empty()) cfg.in = in;
        if (count) cfg.count = *count;
        if (seed) cfg.seed = *seed;
        if (degree_cap) cfg.degree_cap = *degree_cap;
        if (threads) cfg.threads = *threads;
        if (locus) cfg.locus = true;
        if (human) cfg.human = true;
        if (json) cfg.human = false;

        auto render = [&](const skrw::Report& r) { return cfg.human ? r.to_human() : skrw::dump(r.to_json()); };

        switch (*cfg.mode) {
            case skrw::Mode::discover: {
                auto res = skrw::discover(cfg.params, cfg.degree_cap);
                if (!cfg.out.empty()) {
                    if (!res.structure) {
                        std::cerr << "skrw: no structure assembled; " << cfg.out << " not written\n";
                    } else {
                        write_file(cfg.out, skrw::emit_structure(*res.structure));
                    }
                }
                if (report_path.empty())
                    std::cout << render(res.report);
                else
                    write_file(report_path, render(res.report));
                return res.report.exit_code();
            }
            case skrw::Mode::verify: {
                if (cfg.in.empty()) throw skrw::ParseError("verify needs --in <structure file>");
                const auto parsed = skrw::parse_structure(read_file(cfg.in));
                const auto rep = skrw::run_verify(parsed);
                if (cfg.out.empty())
                    std::cout << render(rep);
                else
                    write_file(cfg.out, render(rep));
                return rep.exit_code();
            }
            default: {
                skrw::Report rep = cfg.mode == skrw::Mode::realize          ? skrw::run_realize(cfg)
                                   : cfg.mode == skrw::Mode::classical_check ? skrw::run_classical_check(cfg)
                                                                             : skrw::run_sweep(cfg);
                if (cfg.out.empty())
                    std::cout << render(rep);
                else
                    write_file(cfg.out, render(rep));
                return rep.exit_code();
            }
        }
    } catch (const skrw::ParseError& e) {
        std::cerr << "skrw: " << e.what() << "\n";
        return 1;
    } catch (const skrw::Error& e) {
        std::cerr << "skrw: " << e.what() << "\n";
        return 1;
    }
}
