#include <set>

#include <gtest/gtest.h>

#include "ihc/constructors.hpp"
#include "ihc/topology/filtered_complex.hpp"
#include "ihc/topology/io.hpp"
#include "support/properties.hpp"

using namespace ihc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::BadParam;
}

FilteredComplex hexagon_cone() {
    ComplexSpec spec{2, {{"a", 0}}, {}};
    for (int i = 0; i < 6; ++i) spec.vertices.push_back({"v" + std::to_string(i), 2});
    for (int i = 0; i < 6; ++i) spec.maximal_simplices.push_back({"a", "v" + std::to_string(i), "v" + std::to_string((i + 1) % 6)});
    return build_complex(spec);
}

}  // namespace

TEST(BuildComplex, SinglePointIsOneRegularStratum) {
    auto X = build_complex({0, {{"p", 0}}, {{"p"}}});
    EXPECT_EQ(X.size(), 1u);
    ASSERT_EQ(X.strata().size(), 1u);
    EXPECT_TRUE(X.strata()[0].regular);
}

TEST(BuildComplex, HexagonConeCountsAndStrata) {
    auto X = hexagon_cone();
    // 7 vertices, 6 rim + 6 spoke edges, 6 triangles
    EXPECT_EQ(X.size(), 25u);
    ASSERT_EQ(X.strata().size(), 2u);
    EXPECT_EQ(X.strata()[0].dim, 0);
    EXPECT_EQ(X.strata()[0].simplices.size(), 1u);
    EXPECT_EQ(X.strata()[1].dim, 2);
    EXPECT_TRUE(X.strata()[1].regular);
}

TEST(BuildComplex, Errors) {
    EXPECT_EQ(kind_of([] { build_complex({1, {{"a", 0}}, {{"a"}}}); }), ErrorKind::EmptyRegularPart);
    EXPECT_EQ(kind_of([] { build_complex({1, {{"a", 2}}, {{"a"}}}); }), ErrorKind::BadLevel);
    EXPECT_EQ(kind_of([] { build_complex({1, {{"a", -1}}, {{"a"}}}); }), ErrorKind::BadLevel);
    EXPECT_EQ(kind_of([] { build_complex({1, {{"a", 1}, {"a", 1}}, {{"a"}}}); }), ErrorKind::BadParam);
    EXPECT_EQ(kind_of([] { build_complex({1, {{"a", 1}}, {{"a", "b"}}}); }), ErrorKind::BadParam);
}

TEST(BuildComplex, FacesNeverExceedTheirCofaceLevel) {
    for (const auto& recipe : support::zoo()) {
        auto X = build_recipe(recipe).complex;
        for (SimplexIndex s = 0; s < X.size(); ++s)
            for (SimplexIndex f : X.facets(s)) EXPECT_LE(X.level(f), X.level(s)) << recipe;
        for (VertexIndex v = 1; v < X.vertex_count(); ++v) EXPECT_LE(X.vertex(v - 1).level, X.vertex(v).level) << recipe;
    }
}

TEST(Strata, PartitionSimplicesByLevel) {
    for (const auto& recipe : support::zoo()) {
        auto X = build_recipe(recipe).complex;
        std::vector<int> seen(X.size(), 0);
        for (const auto& S : X.strata())
            for (SimplexIndex s : S.simplices) {
                ++seen[s];
                EXPECT_EQ(X.level(s), S.dim) << recipe;
                EXPECT_EQ(S.codim, X.formal_dimension() - S.dim);
                EXPECT_EQ(S.regular, S.codim == 0);
            }
        for (int c : seen) EXPECT_EQ(c, 1) << recipe;
    }
}

TEST(Strata, TrivialTorusAndSuspension) {
    EXPECT_EQ(torus().strata().size(), 1u);
    auto S = join_sphere(0, torus());
    int singular = 0, regular = 0;
    for (const auto& st : S.strata()) (st.regular ? regular : singular)++;
    EXPECT_EQ(singular, 2);
    EXPECT_EQ(regular, 1);
}

TEST(Pseudomanifold, Reports) {
    EXPECT_TRUE(pseudomanifold_check(hexagon_cone()).passes());
    // two triangles sharing one vertex
    auto wedge = build_complex({2, {{"o", 2}, {"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, {{"o", "a", "b"}, {"o", "c", "d"}}});
    auto w = pseudomanifold_check(wedge);
    EXPECT_TRUE(w.pure && w.non_branching && w.dims_ok);
    auto edge = build_complex({2, {{"a", 2}, {"b", 2}}, {{"a", "b"}}});
    EXPECT_FALSE(pseudomanifold_check(edge).pure);
    // three triangles on one edge branch
    auto book = build_complex({2, {{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}, {"e", 2}}, {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "b", "e"}}});
    EXPECT_FALSE(pseudomanifold_check(book).non_branching);
}

TEST(Orientation, DiskSuspensionAndProjectiveCone) {
    EXPECT_NO_THROW(orient(hexagon_cone()));
    EXPECT_NO_THROW(orient(join_sphere(0, torus())));
    EXPECT_EQ(kind_of([] { orient(cone(rp2())); }), ErrorKind::NonOrientable);
    EXPECT_EQ(kind_of([] { orient(rp2()); }), ErrorKind::NonOrientable);
}

TEST(Orientation, InducedBoundariesCancelOnSharedFaces) {
    for (const std::string recipe : {"sphere(2)", "torus", "join_sphere(0,torus)", "cone(circle(6))"}) {
        auto X = build_recipe(recipe).complex;
        auto o = orient(X);
        std::map<SimplexIndex, int> total;
        for (SimplexIndex t : o.simplices)
            for (const auto& [f, e] : boundary(X, t)) total[f] += o.sign_of(t) * e;
        for (SimplexIndex f : X.of_dim(X.formal_dimension() - 1)) {
            int tops = 0;
            for (SimplexIndex c : X.cofacets(f)) tops += X.dim(c) == X.formal_dimension() ? 1 : 0;
            if (tops == 2 && X.is_regular(f)) { EXPECT_EQ(total[f], 0) << recipe << " " << X.name(f); }
        }
    }
}

TEST(FundamentalCycle, OctahedronIsACycleGeneratingTopHomology) {
    auto check = support::fundamental_cycle_ok(sphere(2));
    EXPECT_TRUE(check.ok) << check.detail;
}

TEST(FundamentalCycle, HexagonConeIsARelativeCycle) {
    auto X = hexagon_cone();
    auto gamma = fundamental_cycle(X, orient(X));
    EXPECT_EQ(gamma.size(), 6u);
    // spokes cancel; what is left of the tame boundary is the rim
    std::map<SimplexIndex, int> d;
    for (const auto& [s, sign] : gamma)
        for (const auto& [f, e] : tame_boundary(X, s)) d[f] += sign * e;
    int rim = 0;
    for (const auto& [f, v] : d) {
        if (v == 0) continue;
        EXPECT_EQ(X.vertex(X.simplex(f)[0]).level, 2);
        ++rim;
    }
    EXPECT_EQ(rim, 6);
    auto check = support::fundamental_cycle_ok(X);
    EXPECT_TRUE(check.ok) << check.detail;
}

TEST(FundamentalCycle, TwoOctahedraGiveRankTwo) {
    auto X = disjoint_union(sphere(2), sphere(2));
    auto check = support::fundamental_cycle_ok(X);
    EXPECT_TRUE(check.ok) << check.detail;
    EXPECT_EQ(support::top_components(X).back(), 1);
}

TEST(Json, RoundTripIsIdentity) {
    for (const auto& recipe : support::zoo()) {
        auto X = build_recipe(recipe).complex;
        auto j = complex_to_json(X);
        auto Y = complex_from_json(j);
        EXPECT_TRUE(X == Y) << recipe;
        EXPECT_EQ(complex_to_json(Y).dump(), j.dump()) << recipe;
    }
}

TEST(Json, MalformedInputIsAParseError) {
    EXPECT_EQ(kind_of([] { complex_from_json_text("{\"formal_dimension\": 1"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { complex_from_json_text("{\"vertices\": []}"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { load_complex("/nonexistent/file.json"); }), ErrorKind::ParseError);
}
