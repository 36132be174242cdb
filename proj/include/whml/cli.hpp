#pragma once

// Command-line front end. Exit codes: 0 ok, 1 verify failure, 2 usage/domain, 3 I/O.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "classifier.hpp"
#include "contour.hpp"
#include "error.hpp"
#include "io.hpp"
#include "transcendental.hpp"
#include "verify.hpp"

namespace whml {

enum exit_code : int { exit_ok = 0, exit_verify_fail = 1, exit_usage = 2, exit_io = 3 };

namespace detail {

inline std::string num(double v, const char* f = "%.15g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline void announce_file(std::ostream& out, const std::string& path, const std::string& hash)
{
    out << "wrote " << path << " fnv1a64=" << hash << "\n";
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr)
{
    CLI::App app{"Fredholm classification for a Levy-type operator on the half-line", "whml"};
    app.require_subcommand(1);

    double alpha = 0, p = 0, s = 0;
    bool json = false;

    auto* cls = app.add_subcommand("classify", "regime and Fredholm verdict for (alpha, p, s)");
    std::string mode = "theorem";
    ClassifyOptions copt;
    cls->add_option("--alpha", alpha)->required();
    cls->add_option("--p", p)->required();
    cls->add_option("--s", s)->required();
    cls->add_option("--mode", mode)->check(CLI::IsMember({"theorem", "numeric", "both"}));
    cls->add_option("--critical-tol", copt.critical_tol, "band around the critical s")->check(CLI::PositiveNumber);
    cls->add_option("--fredholm-tol", copt.fredholm_tol)->check(CLI::PositiveNumber);
    cls->add_option("--points", copt.n_base, "contour base resolution")->check(CLI::Range(64, 1 << 20));
    cls->add_flag("--json", json);

    auto* ac = app.add_subcommand("alphac", "root of the critical transcendental equation");
    double ac_alpha = 0, ac_tol = 1e-12;
    int grid = 0;
    std::string csv_path;
    auto* ac_a = ac->add_option("--alpha", ac_alpha);
    auto* ac_g = ac->add_option("--grid", grid, "alpha = i/(N+1), i = 1..N")->check(CLI::Range(1, 100000));
    ac_a->excludes(ac_g);
    ac->add_option("--tol", ac_tol)->check(CLI::PositiveNumber);
    ac->add_option("--csv", csv_path);

    auto* ct = app.add_subcommand("contour", "export the symbol loop");
    std::string out_path, format = "csv";
    int points = 512;
    ct->add_option("--alpha", alpha)->required();
    ct->add_option("--p", p)->required();
    ct->add_option("--s", s)->required();
    ct->add_option("--out", out_path)->required();
    ct->add_option("--format", format)->check(CLI::IsMember({"csv", "svg"}));
    ct->add_option("--points", points)->check(CLI::Range(64, 1 << 20));

    auto* vf = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    int density = 40;
    vf->add_option("--suite", suite)->check(CLI::IsMember({"kernel", "operator", "symbols", "transcend", "all"}));
    vf->add_option("--density", density)->check(CLI::Range(20, 400));
    vf->add_flag("--json", json);

    auto* ix = app.add_subcommand("index", "winding number and operator index");
    ix->add_option("--alpha", alpha)->required();
    ix->add_option("--p", p)->required();
    ix->add_option("--s", s)->required();
    ix->add_option("--fredholm-tol", copt.fredholm_tol)->check(CLI::PositiveNumber);
    ix->add_option("--points", copt.n_base)->check(CLI::Range(64, 1 << 20));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*cls) {
            ClassifyMode m = mode == "numeric" ? ClassifyMode::NUMERIC
                             : mode == "both"  ? ClassifyMode::BOTH
                                               : ClassifyMode::THEOREM;
            auto r = classify(alpha, p, s, m, copt);
            out << (json ? r.to_json().dump(2) + "\n" : r.to_text());
            return exit_ok;
        }
        if (*ac) {
            if (!*ac_a && !*ac_g)
                fail(errc::domain, "alphac needs --alpha or --grid");
            if (*ac_a && csv_path.empty()) {
                out << detail::num(alpha_c(ac_alpha, ac_tol)) << "\n";
                return exit_ok;
            }
            std::vector<double> as;
            if (*ac_a)
                as.push_back(ac_alpha);
            for (int i = 1; i <= grid; ++i)
                as.push_back(double(i) / (grid + 1));
            std::string table = "alpha,alpha_c\n";
            for (double a : as)
                table += detail::num(a, "%.17g") + "," + detail::num(alpha_c(a, ac_tol), "%.17g") + "\n";
            if (csv_path.empty()) {
                out << table;
            } else {
                detail::announce_file(out, csv_path, write_file(csv_path, table));
            }
            return exit_ok;
        }
        if (*ct) {
            auto loop = build_loop(SpectralParams::infer(alpha, p, s), points);
            std::ostringstream buf;
            export_loop(loop, format == "svg" ? LoopFormat::SVG : LoopFormat::CSV, buf);
            detail::announce_file(out, out_path, write_file(out_path, buf.str()));
            out << "points " << loop.points.size() << ", min modulus "
                << detail::num(min_modulus(loop), "%.6g") << "\n";
            return exit_ok;
        }
        if (*vf) {
            auto res = verify_suites(suite, density);
            bool ok = true;
            nlohmann::ordered_json j;
            for (const auto& [name, reps] : res) {
                auto& arr = j[name] = nlohmann::ordered_json::array();
                for (const auto& r : reps) {
                    ok = ok && r.pass;
                    arr.push_back(r.to_json());
                    if (!json)
                        out << (r.pass ? "PASS " : "FAIL ") << name << "/" << r.name << "  "
                            << (r.is_residual ? "max_residual=" : "min_margin=")
                            << detail::num(r.min_margin, "%.3e") << " tol="
                            << detail::num(r.tolerance, "%.1e") << "  at " << r.argmin << "\n";
                }
            }
            if (json)
                out << j.dump(2) << "\n";
            else
                out << (ok ? "all checks passed" : "FAILURES present") << "\n";
            return ok ? exit_ok : exit_verify_fail;
        }
        if (*ix) {
            auto r = classify(alpha, p, s, ClassifyMode::NUMERIC, copt);
            if (r.regime == ClassRegime::INADMISSIBLE)
                fail(errc::domain, "parameters outside both regimes: " + r.notes);
            if (!r.fredholm) {
                out << "NOT_FREDHOLM (min modulus " << detail::num(*r.min_modulus, "%.6g") << ")\n";
                return exit_ok;
            }
            out << "winding " << *r.winding << "\n"
                << "symbol_index " << -*r.winding << "\n"
                << "index " << *r.index << "\n";
            return exit_ok;
        }
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == errc::io ? exit_io : exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace whml
