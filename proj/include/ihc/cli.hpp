#pragma once

// Command-line front end: validate | strata | homology | blowup | verify | example.
// Exit codes: 0 success, 1 bad input, 2 failed precondition (e.g. orientation),
// 3 a verification ran and failed.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ihc/blowup.hpp"
#include "ihc/constructors.hpp"
#include "ihc/duality.hpp"
#include "ihc/intersection_chains.hpp"
#include "ihc/perversity.hpp"
#include "ihc/topology/io.hpp"

namespace ihc::cli {

enum ExitCode : int { kOk = 0, kInput = 1, kPrecondition = 2, kVerifyFailed = 3 };

enum class Format { Table, Json, Csv };

/// Recipe text, or a path to a JSON complex.
inline Space load_space(const std::string& arg) {
    const bool looks_like_file = arg.size() > 5 && arg.compare(arg.size() - 5, 5, ".json") == 0;
    if (looks_like_file || std::filesystem::is_regular_file(arg)) {
        Space s;
        s.recipe = arg;
        s.complex = load_complex(arg);
        s.boundary.assign(s.complex.size(), 0);
        return s;
    }
    return build_recipe(arg);
}

/// Runs jobs on up to `threads` workers; results keep job order.
template <class T>
std::vector<T> parallel_map(const std::vector<std::function<T()>>& jobs, unsigned threads) {
    std::vector<T> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

namespace detail {

inline std::string torsion_text(const DegreeHomology& h) {
    std::string s;
    for (const auto& t : h.torsion) s += (s.empty() ? "" : ";") + t.str();
    return s;
}

inline void write_summary(std::ostream& out, const HomologySummary& h, Format f, const std::string& title) {
    switch (f) {
    case Format::Json: out << summary_to_json(h).dump() << "\n"; break;
    case Format::Csv:
        out << "degree,betti,torsion\n";
        for (std::size_t k = 0; k < h.degrees.size(); ++k)
            out << k << "," << h.degrees[k].betti << "," << torsion_text(h.degrees[k]) << "\n";
        break;
    case Format::Table:
        out << title << "\n";
        for (std::size_t k = 0; k < h.degrees.size(); ++k)
            out << "  " << std::setw(3) << k << "  " << to_string(h.degrees[k], h.coeff) << "\n";
        break;
    }
}

inline void write_reports(std::ostream& out, const std::vector<DualityReport>& reports, Format f, bool timing) {
    if (f == Format::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r, timing));
        out << arr.dump(2) << "\n";
        return;
    }
    if (f == Format::Csv) {
        out << "check,space,perversity,coefficients,section,degree,expected,computed,pass\n";
        for (const auto& r : reports)
            for (const auto& row : r.rows)
                out << r.check << ",\"" << r.space << "\",\"" << r.perversity << "\"," << r.coeff.to_string() << ","
                    << row.section << "," << row.degree << "," << to_string(row.expected, r.coeff) << ","
                    << to_string(row.computed, r.coeff) << "," << (row.pass ? "yes" : "no") << "\n";
        return;
    }
    for (const auto& r : reports) {
        out << (r.verdict ? "PASS" : "FAIL") << "  " << r.check << "  " << r.space << "  [" << r.perversity << "]  "
            << r.coeff.to_string();
        if (timing) out << "  " << std::fixed << std::setprecision(3) << r.seconds << "s";
        out << "\n";
        for (const auto& row : r.rows)
            out << "    " << std::left << std::setw(16) << row.section << std::right << " k=" << std::setw(2) << row.degree
                << "  expected " << std::left << std::setw(10) << to_string(row.expected, r.coeff) << " computed "
                << std::setw(10) << to_string(row.computed, r.coeff) << std::right << (row.pass ? "  ok" : "  MISMATCH")
                << "   (" << row.source << ")\n";
        for (const auto& n : r.notes) out << "    note: " << n << "\n";
    }
}

inline unsigned thread_count(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("IHC_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

} // namespace detail

struct Options {
    std::string space;
    std::string coeff = "z";
    std::string perversity = "zero";
    std::string format = "table";
    std::string out_path;
    std::string theory = "tame";
    std::string check;
    std::string base;
    std::vector<int> pv{0};
    int a = 0;
    int p_sphere = 0;
    int threads = 0;
    bool timing = false;
    bool cells = false;
};

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Intersection homology and blown-up intersection cohomology of filtered simplicial complexes", "ihc"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_perversity) {
        sub->add_option("--coeff", o.coeff, "coefficients: z | q | zp:<prime>");
        if (with_perversity) sub->add_option("--perversity", o.perversity, "zero | top | codim:a,b,.. | strata:{id:v,..} | dual:<spec>");
        sub->add_option("--format", o.format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", o.out_path, "write output to this file");
    };

    auto* validate = app.add_subcommand("validate", "check a complex: filtration, pseudomanifold conditions, orientability");
    validate->add_option("space", o.space, "recipe or JSON file")->required();
    common(validate, false);

    auto* strata = app.add_subcommand("strata", "list the strata");
    strata->add_option("space", o.space, "recipe or JSON file")->required();
    common(strata, false);

    auto* homology_cmd = app.add_subcommand("homology", "intersection homology or tame intersection cohomology");
    homology_cmd->add_option("space", o.space, "recipe or JSON file")->required();
    homology_cmd->add_option("--theory", o.theory, "king | tame | cochain")->check(CLI::IsMember({"king", "tame", "cochain"}));
    common(homology_cmd, true);

    auto* blowup_cmd = app.add_subcommand("blowup", "blown-up intersection cohomology");
    blowup_cmd->add_option("space", o.space, "recipe or JSON file")->required();
    blowup_cmd->add_flag("--cells", o.cells, "also report the cell basis sizes per degree");
    common(blowup_cmd, true);

    auto* verify = app.add_subcommand("verify", "run a verification: cone | join | bm | poincare | complementary | bidual | deligne");
    verify->add_option("check", o.check, "which verification")
        ->required()
        ->check(CLI::IsMember({"cone", "join", "bm", "poincare", "complementary", "bidual", "deligne"}));
    verify->add_option("--base", o.base, "link or base space (recipe or JSON file)");
    verify->add_option("--space", o.space, "whole space for poincare, complementary, bidual");
    verify->add_option("--pv", o.pv, "apex perversity values (cone, deligne)");
    verify->add_option("-a", o.a, "sphere or cube dimension (join, bm)");
    verify->add_option("--psphere", o.p_sphere, "perversity of the join sphere");
    verify->add_option("--threads", o.threads, "worker threads (default IHC_THREADS or 1)");
    verify->add_flag("--timing", o.timing, "include wall time");
    common(verify, true);

    auto* example = app.add_subcommand("example", "print a built-in space as JSON, or list the built-in recipes");
    example->add_option("space", o.space, "recipe");
    common(example, false);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();  // program name
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) {
            err << "error: cannot write '" << o.out_path << "'\n";
            return kInput;
        }
        sink = &file;
    }
    const Format fmt = o.format == "json" ? Format::Json : o.format == "csv" ? Format::Csv : Format::Table;

    try {
        const Coefficients coeff = Coefficients::parse(o.coeff);

        if (*validate) {
            const Space S = load_space(o.space);
            const FilteredComplex& X = S.complex;
            const auto pm = pseudomanifold_check(X);
            bool orientable = true;
            try {
                (void)orient(X);
            } catch (const Error&) {
                orientable = false;
            }
            nlohmann::json j;
            j["formal_dimension"] = X.formal_dimension();
            j["vertices"] = X.vertex_count();
            j["simplices"] = X.size();
            j["strata"] = X.strata().size();
            j["pseudomanifold"] = {{"pure", pm.pure},
                                   {"non_branching", pm.non_branching},
                                   {"dimensions", pm.dims_ok},
                                   {"closed", pm.closed},
                                   {"boundary_facets", pm.boundary_facets.size()}};
            j["orientable"] = orientable;
            if (fmt == Format::Json) {
                *sink << j.dump() << "\n";
            } else if (fmt == Format::Csv) {
                *sink << "formal_dimension,vertices,simplices,strata,pseudomanifold,closed,orientable\n"
                      << X.formal_dimension() << "," << X.vertex_count() << "," << X.size() << "," << X.strata().size()
                      << "," << (pm.passes() ? "yes" : "no") << "," << (pm.closed ? "yes" : "no") << ","
                      << (orientable ? "yes" : "no") << "\n";
            } else {
                *sink << "formal dimension " << X.formal_dimension() << ", " << X.vertex_count() << " vertices, "
                      << X.size() << " simplices, " << X.strata().size() << " strata\n"
                      << "pseudomanifold: " << (pm.passes() ? "yes" : "no") << (pm.closed ? "" : " (with boundary)")
                      << "\norientable: " << (orientable ? "yes" : "no") << "\n";
            }
            return kOk;
        }

        if (*strata) {
            const Space S = load_space(o.space);
            const FilteredComplex& X = S.complex;
            if (fmt == Format::Json) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& st : X.strata())
                    arr.push_back({{"name", st.name},
                                   {"dim", st.dim},
                                   {"codim", st.codim},
                                   {"regular", st.regular},
                                   {"simplices", st.simplices.size()}});
                *sink << arr.dump() << "\n";
            } else {
                if (fmt == Format::Csv) *sink << "name,dim,codim,regular,simplices\n";
                for (const auto& st : X.strata()) {
                    if (fmt == Format::Csv)
                        *sink << st.name << "," << st.dim << "," << st.codim << "," << (st.regular ? "yes" : "no") << ","
                              << st.simplices.size() << "\n";
                    else
                        *sink << std::left << std::setw(12) << st.name << std::right << " dim " << st.dim << "  codim "
                              << st.codim << "  " << (st.regular ? "regular " : "singular") << "  " << st.simplices.size()
                              << " simplices\n";
                }
            }
            return kOk;
        }

        if (*homology_cmd) {
            const Space S = load_space(o.space);
            const Perversity p = parse_perversity(S.complex, o.perversity);
            HomologySummary h;
            if (o.theory == "cochain") h = intersection_cochain_cohomology(S.complex, p, coeff);
            else h = intersection_homology(S.complex, p, o.theory == "king" ? ChainVariant::King : ChainVariant::Tame, coeff);
            detail::write_summary(*sink, h, fmt,
                                  o.space + "  theory " + o.theory + "  perversity " + p.to_string() + "  " + coeff.to_string());
            return kOk;
        }

        if (*blowup_cmd) {
            const Space S = load_space(o.space);
            const Perversity p = parse_perversity(S.complex, o.perversity);
            const auto [h, cells, allowed] = visit_ring(coeff, [&](const auto& R) {
                auto bp = blowup_p_complex(S.complex, p, R);
                std::vector<std::size_t> c, a;
                for (std::size_t k = 0; k < bp.basis.degrees(); ++k) c.push_back(bp.basis.of_degree(k).size());
                for (std::size_t k = 0; k < bp.sub.complex.degrees(); ++k) a.push_back(bp.sub.complex.rank(static_cast<std::int64_t>(k)));
                return std::make_tuple(homology(bp.sub.complex), c, a);
            });
            if (fmt == Format::Json && o.cells) {
                nlohmann::json j;
                j["cohomology"] = summary_to_json(h);
                j["cells"] = cells;
                j["allowable"] = allowed;
                *sink << j.dump() << "\n";
                return kOk;
            }
            detail::write_summary(*sink, h, fmt, o.space + "  blown-up  perversity " + p.to_string() + "  " + coeff.to_string());
            if (o.cells && fmt == Format::Table) {
                *sink << "cells per degree:";
                for (auto c : cells) *sink << " " << c;
                *sink << "\nallowable subcomplex ranks:";
                for (auto c : allowed) *sink << " " << c;
                *sink << "\n";
            }
            return kOk;
        }

        if (*verify) {
            const std::string base = o.base.empty() ? o.space : o.base;
            const std::string whole = o.space.empty() ? o.base : o.space;
            if (base.empty()) throw Error(ErrorKind::BadParam, "verify needs --base or --space");
            (void)build_recipe(base);  // verify works on recipes; fail before any computation
            std::vector<std::function<std::vector<DualityReport>()>> jobs;
            auto single = [](auto f) { return [f] { return std::vector<DualityReport>{f()}; }; };
            if (o.check == "cone") {
                for (int pv : o.pv) jobs.push_back([=] { return verify_cone_formulas(base, pv, coeff); });
            } else if (o.check == "deligne") {
                for (int pv : o.pv) jobs.push_back(single([=] { return verify_local_deligne(base, pv, coeff); }));
            } else if (o.check == "join") {
                jobs.push_back(single([=] { return verify_join_formula(base, o.a, o.p_sphere, coeff, o.perversity); }));
            } else if (o.check == "bm") {
                jobs.push_back(single([=] { return verify_bm_product_formula(base, o.a, o.perversity, coeff); }));
            } else if (o.check == "poincare") {
                jobs.push_back(single([=] { return verify_poincare(whole, o.perversity, coeff); }));
            } else if (o.check == "complementary") {
                jobs.push_back(single([=] { return verify_complementary_field(whole, o.perversity, coeff); }));
            } else {
                jobs.push_back(single([=] { return verify_bidual_field(whole, o.perversity, coeff); }));
            }
            std::vector<DualityReport> reports;
            for (auto& batch : parallel_map(jobs, detail::thread_count(o.threads)))
                for (auto& r : batch) reports.push_back(std::move(r));
            detail::write_reports(*sink, reports, fmt, o.timing);
            const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.verdict; });
            return all ? kOk : kVerifyFailed;
        }

        if (*example) {
            if (o.space.empty()) {
                for (const char* r : {"point", "interval", "circle(6)", "sphere(2)", "torus", "rp2", "cone(circle(6))",
                                      "cone(torus)", "cone(rp2)", "join_sphere(0,torus)", "join_sphere(1,circle(3))",
                                      "product_cube(1,circle(6))", "disjoint_union(torus,torus)"})
                    *sink << r << "\n";
                return kOk;
            }
            *sink << complex_to_json(load_space(o.space).complex).dump(fmt == Format::Table ? 2 : -1) << "\n";
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::NonOrientable) err << "hint: orientation is not needed over zp:2\n";
        return is_input_error(e.kind()) ? kInput : kPrecondition;
    }
    return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

} // namespace ihc::cli
