#pragma once

// Finite checks of the cone, join, product, duality and local axiom
// statements. Every expected column comes from a formula fed with
// separately computed invariants of the inputs, never from constants.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ihc/blowup.hpp"
#include "ihc/constructors.hpp"
#include "ihc/intersection_chains.hpp"
#include "ihc/perversity.hpp"

namespace ihc {

struct ReportRow {
    std::string section;
    int degree = 0;
    DegreeHomology expected;
    DegreeHomology computed;
    std::string source;  // where the expectation comes from
    bool pass = false;
};

struct DualityReport {
    std::string check;
    std::string space;
    std::string perversity;
    Coefficients coeff;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    bool verdict = false;
    double seconds = 0;

    void add(std::string section, int degree, DegreeHomology expected, DegreeHomology computed, std::string source) {
        const bool ok = expected == computed;
        rows.push_back({std::move(section), degree, std::move(expected), std::move(computed), std::move(source), ok});
    }
    void finish() {
        verdict = true;
        for (const auto& r : rows) verdict = verdict && r.pass;
    }
};

namespace detail {

/// Runs body, stamps wall time and the verdict.
inline DualityReport timed(DualityReport r, const std::function<void(DualityReport&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.finish();
    return r;
}

inline std::size_t span(const HomologySummary& a, const HomologySummary& b, std::size_t at_least = 0) {
    return std::max({a.degrees.size(), b.degrees.size(), at_least});
}

/// Ext(M, R) for a finitely generated M: its torsion over the integers, zero over a field.
inline DegreeHomology ext(const DegreeHomology& M, const Coefficients& coeff) {
    if (coeff.is_field()) return {};
    return {0, M.torsion};
}

inline void require_field(const Coefficients& coeff) {
    if (!coeff.is_field()) throw Error(ErrorKind::NotAField, "this check needs field coefficients (q or zp:<prime>)");
}

} // namespace detail

/// Perversity on cone(L): `on_link` on the strata of L, p_v at the apex.
inline Perversity cone_perversity(const Construction& c, const Perversity& on_link, int p_v) {
    return induce(on_link, c, p_v);
}

inline std::string cone_perversity_label(const std::string& link_spec, int p_v) {
    return link_spec + ", apex " + std::to_string(p_v);
}

/// Blown-up, tame, dual cochain and pair (cone, L) complexes
/// against the cone formulas, with D = codim(v) - 2 - p_v.
inline std::vector<DualityReport> verify_cone_formulas(const std::string& link_recipe, int p_v,
                                                       const Coefficients& coeff,
                                                       const std::string& link_perversity = "zero") {
    const Space L = build_recipe(link_recipe);
    const Construction c = make_cone(L.complex);
    const Perversity pL = parse_perversity(L.complex, link_perversity);
    const Perversity p = cone_perversity(c, pL, p_v);
    const FilteredComplex& C = c.result;
    const int D = C.formal_dimension() - 2 - p_v;
    const std::string space = "cone(" + link_recipe + ")";
    const std::string plabel = cone_perversity_label(link_perversity, p_v);
    std::vector<DualityReport> out;

    out.push_back(detail::timed({"cone_blowup", space, plabel, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        const auto link = blowup_cohomology(L.complex, pL, coeff);
        const auto cone = blowup_cohomology(C, p, coeff);
        for (std::size_t k = 0; k < detail::span(link, cone, static_cast<std::size_t>(C.formal_dimension()) + 1); ++k) {
            const auto ki = static_cast<int>(k);
            if (ki <= p_v) r.add("blowup", ki, link.at(ki), cone.at(ki), "H^k(L), k <= p(v)");
            else r.add("blowup", ki, {}, cone.at(ki), "0, k > p(v)");
        }
    }));

    out.push_back(detail::timed({"cone_tame", space, plabel, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        const auto link = intersection_homology(L.complex, pL, ChainVariant::Tame, coeff);
        const auto cone = intersection_homology(C, p, ChainVariant::Tame, coeff);
        for (std::size_t k = 0; k < detail::span(link, cone, static_cast<std::size_t>(C.formal_dimension()) + 1); ++k) {
            const auto ki = static_cast<int>(k);
            if (ki <= D) r.add("tame", ki, link.at(ki), cone.at(ki), "h_k(L), k <= Dp(v)");
            else r.add("tame", ki, {}, cone.at(ki), "0, k > Dp(v)");
        }
    }));

    out.push_back(detail::timed({"cone_cochain", space, plabel, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        const auto link_co = intersection_cochain_cohomology(L.complex, pL, coeff);
        const auto link = intersection_homology(L.complex, pL, ChainVariant::Tame, coeff);
        const auto cone = intersection_cochain_cohomology(C, p, coeff);
        for (std::size_t k = 0; k < detail::span(link_co, cone, static_cast<std::size_t>(C.formal_dimension()) + 1); ++k) {
            const auto ki = static_cast<int>(k);
            if (ki <= D) r.add("cochain", ki, link_co.at(ki), cone.at(ki), "h^k(L), k <= Dp(v)");
            else if (ki == D + 1) r.add("cochain", ki, detail::ext(link.at(ki - 1), coeff), cone.at(ki), "Ext(h_(k-1)(L)), k = Dp(v)+1");
            else r.add("cochain", ki, {}, cone.at(ki), "0, k > Dp(v)+1");
        }
    }));

    out.push_back(detail::timed({"cone_pair", space + " rel " + link_recipe, plabel, coeff, {}, {}, false, 0},
                                [&](DualityReport& r) {
        SimplexMask rim(C.size(), 0);
        std::vector<char> image(C.vertex_count(), 0);
        for (VertexIndex v : c.vertex_image[0]) image[v] = 1;
        for (SimplexIndex s = 0; s < C.size(); ++s) {
            bool inside = true;
            for (VertexIndex v : C.simplex(s)) inside = inside && image[v];
            rim[s] = inside ? 1 : 0;
        }
        const auto link = intersection_homology(L.complex, pL, ChainVariant::Tame, coeff);
        const auto pair = intersection_homology(C, p, ChainVariant::Tame, coeff, &rim);
        for (std::size_t k = 0; k < detail::span(link, pair, static_cast<std::size_t>(C.formal_dimension()) + 2); ++k) {
            const auto ki = static_cast<int>(k);
            if (ki <= D + 1) {
                r.add("pair", ki, {}, pair.at(ki), "0, k <= Dp(v)+1");
            } else {
                // reducing only changes k = 1, which lies above Dp(v)+1 only when Dp(v) < 0;
                // there the cone is acyclic and the pair sequence gives the unreduced group
                r.add("pair", ki, link.at(ki - 1), pair.at(ki), "h~_(k-1)(L), k > Dp(v)+1");
            }
        }
    }));
    return out;
}

/// h_*(S^a * X) against the three-branch join formula; D = codim(S^a) - 2 - p(S^a).
inline DualityReport verify_join_formula(const std::string& recipe, int a, int p_sphere, const Coefficients& coeff,
                                         const std::string& base_perversity = "zero") {
    const Space X = build_recipe(recipe);
    const Construction c = make_join_sphere(a, X.complex);
    const Perversity pX = parse_perversity(X.complex, base_perversity);
    const Perversity p = induce(pX, c, p_sphere);
    const int D = X.complex.formal_dimension() + 1 - 2 - p_sphere;
    const std::string space = "join_sphere(" + std::to_string(a) + "," + recipe + ")";
    return detail::timed({"join", space, base_perversity + ", sphere " + std::to_string(p_sphere), coeff, {}, {}, false, 0},
                         [&](DualityReport& r) {
        const auto base = intersection_homology(X.complex, pX, ChainVariant::Tame, coeff);
        const auto join = intersection_homology(c.result, p, ChainVariant::Tame, coeff);
        const std::size_t top = static_cast<std::size_t>(c.result.formal_dimension()) + 1;
        for (std::size_t k = 0; k < detail::span(base, join, top); ++k) {
            const auto ki = static_cast<int>(k);
            if (ki <= D) r.add("join", ki, base.at(ki), join.at(ki), "h_k(X), k <= Dp");
            else if (ki <= D + a + 1) r.add("join", ki, {}, join.at(ki), "0, Dp+1 <= k <= Dp+a+1");
            else r.add("join", ki, base.at(ki - a - 1), join.at(ki), "h_(k-a-1)(X), k >= Dp+a+2");
        }
    });
}

/// h_k(L x I^a, L x boundary I^a) against h_(k-a)(L).
inline DualityReport verify_bm_product_formula(const std::string& recipe, int a, const std::string& perversity,
                                               const Coefficients& coeff) {
    if (a < 1) throw Error(ErrorKind::BadParam, "the product check needs a >= 1");
    const Space L = build_recipe(recipe);
    const Construction c = make_product_cube(a, L.complex);
    const Perversity pL = parse_perversity(L.complex, perversity);
    const Perversity p = induce(pL, c, 0);
    const std::string space = "product_cube(" + std::to_string(a) + "," + recipe + ") rel boundary";
    return detail::timed({"bm_product", space, perversity, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        const auto base = intersection_homology(L.complex, pL, ChainVariant::Tame, coeff);
        const auto pair = intersection_homology(c.result, p, ChainVariant::Tame, coeff, &c.boundary);
        const std::size_t top = static_cast<std::size_t>(c.result.formal_dimension()) + 1;
        for (std::size_t k = 0; k < detail::span(base, pair, top); ++k) {
            const auto ki = static_cast<int>(k);
            r.add("bm", ki, base.at(ki - a), pair.at(ki), "h_(k-a)(L)");
        }
    });
}

/// H^k_p(X) against h^p_(n-k)(X, boundary X), rank and torsion.
inline DualityReport verify_poincare(const std::string& recipe, const std::string& perversity, const Coefficients& coeff) {
    const Space S = build_recipe(recipe);
    const FilteredComplex& X = S.complex;
    const Perversity p = parse_perversity(X, perversity);
    const bool char2 = coeff.kind == Coefficients::Kind::PrimeField && coeff.prime == 2;
    if (!char2) (void)orient(X);  // throws NonOrientable
    return detail::timed({"poincare", recipe, perversity, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        const auto pm = pseudomanifold_check(X);
        if (!pm.passes()) r.notes.push_back("input is not a pseudomanifold");
        const SimplexMask bd = boundary_subcomplex(X);
        bool has_boundary = false;
        for (char b : bd) has_boundary = has_boundary || b;
        if (has_boundary) r.notes.push_back("homology taken relative to the boundary");
        const auto co = blowup_cohomology(X, p, coeff);
        const auto ho = intersection_homology(X, p, ChainVariant::Tame, coeff, has_boundary ? &bd : nullptr);
        const int n = X.formal_dimension();
        for (int k = 0; k <= n; ++k) r.add("poincare", k, ho.at(n - k), co.at(k), "h_(n-k)(X, bX)");
        for (std::size_t k = static_cast<std::size_t>(n) + 1; k < co.degrees.size(); ++k)
            r.add("poincare", static_cast<int>(k), {}, co.at(static_cast<std::int64_t>(k)), "0 above n");
        if (pm.passes() == false) r.rows.push_back({"pseudomanifold", 0, {1, {}}, {0, {}}, "input check", false});
    });
}

/// Over a field: dim H^k_p = dim h^k_(Dp).
inline DualityReport verify_complementary_field(const std::string& recipe, const std::string& perversity,
                                                const Coefficients& coeff) {
    detail::require_field(coeff);
    const Space S = build_recipe(recipe);
    const Perversity p = parse_perversity(S.complex, perversity);
    return detail::timed({"complementary", recipe, perversity, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        const auto blown = blowup_cohomology(S.complex, p, coeff);
        const auto dual = intersection_cochain_cohomology(S.complex, p.complementary(), coeff);
        for (std::size_t k = 0; k < detail::span(blown, dual); ++k) {
            const auto ki = static_cast<int>(k);
            r.add("ranks", ki, {dual.at(ki).betti, {}}, {blown.at(ki).betti, {}}, "dim h^k_Dp(X)");
        }
    });
}

/// Over a field: the evaluation map into the bidual is a quasi-isomorphism,
/// decided on cycle and boundary lattices in each degree.
inline DualityReport verify_bidual_field(const std::string& recipe, const std::string& perversity,
                                         const Coefficients& coeff) {
    detail::require_field(coeff);
    const Space S = build_recipe(recipe);
    const Perversity p = parse_perversity(S.complex, perversity);
    return detail::timed({"bidual", recipe, perversity, coeff, {}, {}, false, 0}, [&](DualityReport& r) {
        visit_ring(coeff, [&](const auto& R) {
            using Ring = std::decay_t<decltype(R)>;
            if constexpr (Ring::is_field) {
                auto m = bidual_map(S.complex, p, R);
                if (!is_chain_map(m.chains, m.bidual, m.phi)) r.notes.push_back("evaluation map is not a chain map");
                const auto h = homology(m.chains);
                const auto hb = homology(m.bidual);
                for (std::size_t k = 0; k < m.chains.degrees(); ++k) {
                    const auto ki = static_cast<int>(k);
                    const bool iso = induced_map_is_iso(m.chains, m.bidual, m.phi[k], k);
                    r.rows.push_back({"phi", ki, h.at(ki), hb.at(ki), "induced map is an isomorphism",
                                      iso && h.at(ki) == hb.at(ki)});
                }
                if (!r.notes.empty()) r.rows.push_back({"phi", -1, {}, {1, {}}, "chain map", false});
            }
            return 0;
        });
    });
}

/// Cone chart check: H^i_p(cone L) = 0 for i > p_v, and restriction to L
/// is an isomorphism in degrees <= p_v.
inline DualityReport verify_local_deligne(const std::string& link_recipe, int p_v, const Coefficients& coeff,
                                          const std::string& link_perversity = "zero") {
    const Space L = build_recipe(link_recipe);
    const Construction c = make_cone(L.complex);
    const Perversity pL = parse_perversity(L.complex, link_perversity);
    const Perversity p = cone_perversity(c, pL, p_v);
    return detail::timed({"local_deligne", "cone(" + link_recipe + ")", cone_perversity_label(link_perversity, p_v), coeff,
                          {}, {}, false, 0},
                         [&](DualityReport& r) {
        visit_ring(coeff, [&](const auto& R) {
            using V = typename std::decay_t<decltype(R)>::value_type;
            auto cone = blowup_p_complex(c.result, p, R);
            auto link = blowup_p_complex(L.complex, pL, R);
            const auto hc = homology(cone.sub.complex);
            const auto hl = homology(link.sub.complex);
            const auto proj = cone_restriction(cone.basis, link.basis, c.vertex_image[0], R);

            // restriction between the allowable subcomplexes, in their bases
            std::vector<SparseMatrix<V>> f;
            bool lands = true;
            for (std::size_t k = 0; k < cone.sub.complex.degrees(); ++k) {
                const std::size_t rows = k < link.sub.complex.degrees() ? link.sub.complex.rank(static_cast<std::int64_t>(k)) : 0;
                SparseMatrix<V> fk(rows, cone.sub.complex.rank(static_cast<std::int64_t>(k)));
                if (rows > 0) {
                    LatticeBasis<std::decay_t<decltype(R)>> target(R, link.sub.inclusion[k]);
                    for (std::size_t j = 0; j < fk.cols; ++j) {
                        auto img = apply(R, proj[k], cone.sub.inclusion[k].columns[j]);
                        auto coords = target.coordinates(img);
                        if (!coords) {
                            lands = false;
                            continue;
                        }
                        fk.columns[j] = std::move(*coords);
                    }
                } else {
                    for (std::size_t j = 0; j < fk.cols; ++j)
                        if (!apply(R, proj[k], cone.sub.inclusion[k].columns[j]).empty()) lands = false;
                }
                f.push_back(std::move(fk));
            }
            if (!lands) r.notes.push_back("restriction leaves the allowable subcomplex of L");
            const int top = std::max<int>(static_cast<int>(hc.degrees.size()), c.result.formal_dimension() + 1);
            for (int i = 0; i < top; ++i) {
                if (i > p_v) {
                    r.add("vanishing", i, {}, hc.at(i), "0, i > p(v)");
                } else {
                    bool iso = lands;
                    if (iso && static_cast<std::size_t>(i) < cone.sub.complex.degrees()) {
                        if (static_cast<std::size_t>(i) < link.sub.complex.degrees())
                            iso = induced_map_is_iso(cone.sub.complex, link.sub.complex, f[static_cast<std::size_t>(i)],
                                                     static_cast<std::size_t>(i));
                        else
                            iso = hc.at(i).is_zero();
                    } else if (iso) {
                        iso = hl.at(i).is_zero();
                    }
                    r.rows.push_back({"restriction", i, hl.at(i), hc.at(i), "restriction to L is an isomorphism",
                                      iso && hl.at(i) == hc.at(i)});
                }
            }
            return 0;
        });
    });
}

// ------------------------------------------------------------- rendering

inline nlohmann::json degree_to_json(const DegreeHomology& h) {
    nlohmann::json j;
    j["betti"] = h.betti;
    if (!h.torsion.empty()) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& d : h.torsion) t.push_back(d.str());
        j["torsion"] = t;
    }
    return j;
}

inline nlohmann::json summary_to_json(const HomologySummary& h) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t k = 0; k < h.degrees.size(); ++k) j[std::to_string(k)] = degree_to_json(h.degrees[k]);
    return j;
}

inline nlohmann::json report_to_json(const DualityReport& r, bool timing) {
    nlohmann::json j;
    j["check"] = r.check;
    j["space"] = r.space;
    j["perversity"] = r.perversity;
    j["coefficients"] = r.coeff.to_string();
    j["verdict"] = r.verdict ? "pass" : "fail";
    j["notes"] = r.notes;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"section", row.section},
                        {"degree", row.degree},
                        {"expected", degree_to_json(row.expected)},
                        {"computed", degree_to_json(row.computed)},
                        {"source", row.source},
                        {"pass", row.pass}});
    j["rows"] = rows;
    if (timing) j["seconds"] = r.seconds;
    return j;
}

} // namespace ihc
