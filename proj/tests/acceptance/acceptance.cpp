// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "ihc/cli.hpp"
#include "ihc/duality.hpp"
#include "support/properties.hpp"

using namespace ihc;

namespace {

using Clock = std::chrono::steady_clock;

const Coefficients Z = Coefficients::integers();
const Coefficients Q = Coefficients::rationals();
const Coefficients F2 = Coefficients::prime_field(2);

struct Outcome {
    std::size_t cases = 0;
    std::vector<std::string> problems;
    double seconds = 0;

    void report(const DualityReport& r, double limit) {
        ++cases;
        if (!r.verdict) {
            std::string why = r.check + " " + r.space + " [" + r.perversity + "] " + r.coeff.to_string() + ":";
            for (const auto& row : r.rows)
                if (!row.pass)
                    why += " " + row.section + "@" + std::to_string(row.degree) + " expected " +
                           to_string(row.expected, r.coeff) + " got " + to_string(row.computed, r.coeff);
            problems.push_back(why);
        }
        if (r.seconds > limit) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " took %.2f s (limit %.0f s)", r.seconds, limit);
            problems.push_back(r.check + " " + r.space + buf);
        }
    }
    void check(bool ok, const std::string& why) {
        ++cases;
        if (!ok) problems.push_back(why);
    }
};

/// Transcript of every report, without timings, for the determinism check.
std::string transcript;

void record(const DualityReport& r) { transcript += report_to_json(r, false).dump() + "\n"; }

std::string cone_key(const std::string& link, int pv, const Coefficients& c) {
    return link + "|" + std::to_string(pv) + "|" + c.to_string();
}

std::map<std::string, std::vector<DualityReport>> cone_cache;

const std::vector<DualityReport>& cone_reports(const std::string& link, int pv, const Coefficients& c) {
    auto key = cone_key(link, pv, c);
    auto it = cone_cache.find(key);
    if (it == cone_cache.end()) {
        it = cone_cache.emplace(key, verify_cone_formulas(link, pv, c)).first;
        for (const auto& r : it->second) record(r);
    }
    return it->second;
}

const DualityReport& pick(const std::vector<DualityReport>& rs, const std::string& check) {
    for (const auto& r : rs)
        if (r.check == check) return r;
    throw std::logic_error("missing report " + check);
}

Outcome criterion_1() {
    Outcome o;
    for (const std::string L : {"circle(6)", "torus", "rp2"})
        for (int pv = -1; pv <= 2; ++pv)
            for (const auto& c : {Z, Q, F2}) o.report(pick(cone_reports(L, pv, c), "cone_blowup"), 30);
    return o;
}

Outcome criterion_2() {
    Outcome o;
    for (const std::string L : {"circle(6)", "torus", "rp2"})
        for (int pv = -1; pv <= 2; ++pv)
            for (const auto& c : {Z, Q, F2}) {
                const auto& rs = cone_reports(L, pv, c);
                o.report(pick(rs, "cone_tame"), 10);
                o.report(pick(rs, "cone_cochain"), 10);
            }
    // codim 3 apex with Dp(v) = 1 means p(v) = 0
    auto C = cone(rp2());
    Perversity p(C);
    auto h = intersection_cochain_cohomology(C, p, Z);
    o.check(h.at(2) == DegreeHomology{0, {2}}, "cone(rp2) cochain degree 2 is " + to_string(h.at(2), Z) + ", not Z/2");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    for (const std::string X : {"circle(3)", "torus"})
        for (int a = 0; a <= 1; ++a)
            for (int ps = -1; ps <= 2; ++ps)
                for (const auto& c : {Z, Q}) {
                    auto r = verify_join_formula(X, a, ps, c);
                    record(r);
                    o.report(r, 60);
                }
    auto S = join_sphere(0, torus());
    auto z = intersection_homology(S, Perversity::zero(S), ChainVariant::Tame, Z);
    auto t = intersection_homology(S, Perversity::top(S), ChainVariant::Tame, Z);
    HomologySummary ez{Z, {{1, {}}, {2, {}}, {0, {}}, {1, {}}}};
    HomologySummary et{Z, {{1, {}}, {0, {}}, {2, {}}, {1, {}}}};
    o.check(z.same_as(ez), "suspended torus, zero perversity");
    o.check(t.same_as(et), "suspended torus, top perversity");
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const std::vector<std::tuple<std::string, int, std::string>> cases{
        {"circle(6)", 1, "zero"}, {"point", 2, "zero"}, {"cone(circle(6))", 1, "codim:0,0"}, {"cone(circle(6))", 1, "codim:0,1"}};
    for (const auto& [X, a, p] : cases)
        for (const auto& c : {Z, Q}) {
            auto r = verify_bm_product_formula(X, a, p, c);
            record(r);
            o.report(r, 60);
        }
    for (const std::string L : {"circle(6)", "torus"})
        for (int pv = -1; pv <= 2; ++pv)
            for (const auto& c : {Z, Q, F2}) o.report(pick(cone_reports(L, pv, c), "cone_pair"), 60);
    return o;
}

Outcome criterion_5() {
    Outcome o;
    for (const std::string X : {"sphere(2)", "cone(circle(6))", "join_sphere(0,torus)"})
        for (const std::string p : {"zero", "top"}) {
            auto r = verify_poincare(X, p, Z);
            record(r);
            o.report(r, 120);
        }
    for (const std::string p : {"zero", "top"}) {
        auto r = verify_poincare("cone(rp2)", p, F2);
        record(r);
        o.report(r, 120);
    }
    return o;
}

Outcome criterion_6() {
    Outcome o;
    for (const std::string X : {"sphere(2)", "cone(circle(6))", "join_sphere(0,torus)", "cone(rp2)"})
        for (const std::string p : {"zero", "top"})
            for (const auto& c : {Q, F2}) {
                auto r = verify_complementary_field(X, p, c);
                record(r);
                o.report(r, 120);
            }
    return o;
}

Outcome criterion_7() {
    Outcome o;
    for (const std::string X : {"join_sphere(0,torus)", "cone(rp2)"})
        for (const std::string p : {"zero", "top"})
            for (const auto& c : {Q, F2}) {
                auto r = verify_bidual_field(X, p, c);
                record(r);
                o.report(r, 60);
            }
    return o;
}

Outcome criterion_8() {
    Outcome o;
    for (const std::string L : {"circle(6)", "torus"})
        for (int pv = -1; pv <= 1; ++pv)
            for (const auto& c : {Z, Q, F2}) {
                auto r = verify_local_deligne(L, pv, c);
                record(r);
                o.report(r, 60);
            }
    return o;
}

Outcome criterion_9() {
    Outcome o;
    unsigned seed = 1;
    for (const auto& recipe : support::zoo()) {
        const auto X = build_recipe(recipe).complex;
        auto take = [&](const support::Check& c, const std::string& what) {
            o.check(c.ok, recipe + " " + what + ": " + c.detail);
        };
        take(support::chain_differentials_square_to_zero(X), "d^2");
        take(support::tame_matches_join_formula(X), "tame differential");
        take(support::blowup_squares_to_zero(X), "delta^2");
        take(support::restriction_commutes(X), "restriction");
        take(support::facet_paths_agree(X), "restriction paths");
        take(support::cup_properties(X, 200, seed++), "cup");
        const std::vector<Perversity> ps{Perversity::zero(X), Perversity::top(X), Perversity::zero(X).complementary(),
                                         add(Perversity::top(X), Perversity::top(X))};
        for (const auto& p : ps)
            for (const auto& q : ps)
                if (leq(p, q)) take(support::monotone(X, p, q), "monotone " + p.to_string() + " <= " + q.to_string());
        bool orientable = true;
        try {
            (void)orient(X);
        } catch (const Error&) {
            orientable = false;
        }
        if (orientable) take(support::fundamental_cycle_ok(X), "fundamental cycle");
    }
    return o;
}

std::string cli_text(std::vector<std::string> args) {
    args.insert(args.begin(), "ihc");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"blown-up cone formula", criterion_1},
        {"tame and dual cochain cone formulas", criterion_2},
        {"join with a sphere", criterion_3},
        {"Borel-Moore models", criterion_4},
        {"Poincare duality", criterion_5},
        {"complementary duality over fields", criterion_6},
        {"biduality", criterion_7},
        {"local Deligne conditions", criterion_8},
        {"property suites", criterion_9},
    };
    bool all = true;
    auto print = [&](std::size_t id, const std::string& title, const Outcome& o) {
        const bool ok = o.problems.empty();
        all = all && ok;
        std::printf("%s  %2zu  %-38s %4zu cases  %7.2f s\n", ok ? "PASS" : "FAIL", id, title.c_str(), o.cases, o.seconds);
        for (const auto& p : o.problems) std::printf("        %s\n", p.c_str());
        std::fflush(stdout);
    };
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.problems.push_back(std::string("exception: ") + e.what());
        }
        o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (i == 8 && o.seconds > 300) o.problems.push_back("property suites exceeded 5 minutes");
        print(i + 1, criteria[i].first, o);
    }

    // 10: rerun every verification and compare byte for byte; the CLI must
    // not depend on the worker count either
    const auto t0 = Clock::now();
    Outcome o;
    try {
        const std::string first = transcript;
        transcript.clear();
        cone_cache.clear();
        for (std::size_t i = 0; i < 8; ++i) (void)criteria[i].second();
        o.check(first == transcript, "verification reports differ between runs");
        const std::vector<std::string> jobs{"verify", "cone", "--base", "torus", "--pv", "-1", "0", "1", "2", "--format", "json"};
        auto one = jobs, four = jobs;
        one.insert(one.end(), {"--threads", "1"});
        four.insert(four.end(), {"--threads", "4"});
        const auto a = cli_text(one);
        o.check(a == cli_text(one), "CLI output differs between identical runs");
        o.check(a == cli_text(four), "CLI output depends on the thread count");
        const std::vector<std::string> hom{"homology", "join_sphere(0,torus)", "--theory", "tame", "--format", "json"};
        o.check(cli_text(hom) == cli_text(hom), "homology output differs between runs");
    } catch (const std::exception& e) {
        o.problems.push_back(std::string("exception: ") + e.what());
    }
    o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const double total = std::chrono::duration<double>(Clock::now() - start).count();
    if (total > 900) o.problems.push_back("acceptance run exceeded 15 minutes");
    print(10, "wall clock and determinism", o);
    std::printf("total %.2f s\n", total);
    return all ? 0 : 1;
}
