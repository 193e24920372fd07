#include <gtest/gtest.h>

#include "ihc/constructors.hpp"
#include "ihc/intersection_chains.hpp"
#include "support/properties.hpp"

using namespace ihc;

namespace {

HomologySummary simplicial(const FilteredComplex& X) {
    return intersection_homology(X, Perversity::top(X), ChainVariant::King, Coefficients::integers());
}

/// Euler characteristic from simplex counts.
long euler(const FilteredComplex& X, const SimplexMask* only = nullptr) {
    long chi = 0;
    for (SimplexIndex s = 0; s < X.size(); ++s)
        if (!only || (*only)[s]) chi += X.dim(s) % 2 == 0 ? 1 : -1;
    return chi;
}

}  // namespace

TEST(Generators, TorusRpTwoSphereCounts) {
    auto T = torus();
    EXPECT_EQ(T.vertex_count(), 7u);
    EXPECT_EQ(T.of_dim(2).size(), 14u);
    auto hT = simplicial(T);
    EXPECT_EQ(hT.bettis(), (std::vector<std::size_t>{1, 2, 1}));

    auto P = rp2();
    EXPECT_EQ(P.vertex_count(), 6u);
    EXPECT_EQ(P.of_dim(2).size(), 10u);
    auto hP = simplicial(P);
    EXPECT_EQ(hP.bettis(), (std::vector<std::size_t>{1, 0, 0}));
    EXPECT_EQ(hP.at(1).torsion, (std::vector<BigInt>{2}));

    auto S = sphere(2);
    EXPECT_EQ(S.vertex_count(), 6u);
    EXPECT_EQ(simplicial(S).bettis(), (std::vector<std::size_t>{1, 0, 1}));
    EXPECT_EQ(simplicial(circle(6)).bettis(), (std::vector<std::size_t>{1, 1}));
}

TEST(Generators, TrivialFiltrationAndBadParameters) {
    for (const std::string r : {"point", "interval", "circle(4)", "sphere(3)", "torus", "rp2"}) {
        auto X = build_recipe(r).complex;
        for (const auto& v : X.vertices()) EXPECT_EQ(v.level, X.formal_dimension()) << r;
    }
    EXPECT_THROW(circle(2), Error);
    EXPECT_THROW(sphere(-1), Error);
}

TEST(Cone, PointCircleProjectivePlane) {
    auto I = cone(point());
    EXPECT_EQ(I.formal_dimension(), 1);
    EXPECT_EQ(I.size(), 3u);
    EXPECT_EQ(I.vertex(0).level, 0);

    auto C = cone(circle(6));
    EXPECT_EQ(C.strata().size(), 2u);
    auto P = cone(rp2());
    EXPECT_EQ(P.formal_dimension(), 3);
    EXPECT_EQ(P.strata()[0].codim, 3);
}

TEST(Cone, AddsApexStratumAndKeepsCodims) {
    for (const std::string r : {"circle(6)", "torus", "cone(circle(6))", "join_sphere(0,circle(3))"}) {
        auto L = build_recipe(r).complex;
        auto c = make_cone(L);
        EXPECT_EQ(c.result.strata().size(), L.strata().size() + 1) << r;
        for (const auto& S : L.strata()) {
            const auto T = c.result.stratum_index(c.vertex_image[0][*L.find_vertex(S.name)]);
            EXPECT_EQ(c.result.strata()[T].codim, S.codim) << r;
        }
    }
}

TEST(Join, SuspensionsAndCircleJoin) {
    auto S = join_sphere(0, torus());
    EXPECT_EQ(S.formal_dimension(), 3);
    auto J = join_sphere(1, point());
    EXPECT_EQ(J.formal_dimension(), 2);
    // circle stratum at level 1
    int circle_strata = 0;
    for (const auto& st : J.strata()) circle_strata += st.dim == 1 ? 1 : 0;
    EXPECT_EQ(circle_strata, 1);
    auto E = join_sphere(0, circle(3));
    EXPECT_EQ(E.formal_dimension(), 2);
    int points = 0;
    for (const auto& st : E.strata()) points += st.dim == 0 ? 1 : 0;
    EXPECT_EQ(points, 2);
}

TEST(Join, SuspensionIsTwoConesGluedAlongTheBase) {
    // same face numbers as two cones sharing L
    for (const std::string r : {"circle(3)", "torus"}) {
        auto L = build_recipe(r).complex;
        auto S = join_sphere(0, L);
        auto C = cone(L);
        EXPECT_EQ(S.size(), 2 * C.size() - L.size()) << r;
        EXPECT_EQ(euler(S), 2 * euler(C) - euler(L));
    }
}

TEST(Product, ZeroCubeAndInterval) {
    auto X = torus();
    auto c0 = make_product_cube(0, X);
    EXPECT_TRUE(c0.result == X);
    for (char b : c0.boundary) EXPECT_EQ(b, 0);
    auto c1 = make_product_cube(1, point());
    EXPECT_EQ(c1.result.size(), 3u);
    int bd = 0;
    for (char b : c1.boundary) bd += b;
    EXPECT_EQ(bd, 2);
}

TEST(Product, PrismOverConeHasTwoConeCopiesAsBoundary) {
    auto L = cone(circle(6));
    auto c = make_product_cube(1, L);
    EXPECT_EQ(c.result.formal_dimension(), 3);
    EXPECT_EQ(c.result.max_dim(), 3);
    std::size_t bd = 0;
    for (char b : c.boundary) bd += b;
    EXPECT_EQ(bd, 2 * L.size());
}

TEST(Product, EulerCharacteristics) {
    for (const std::string r : {"circle(6)", "torus", "rp2", "cone(circle(6))"})
        for (int a = 1; a <= 2; ++a) {
            auto X = build_recipe(r).complex;
            auto c = make_product_cube(a, X);
            EXPECT_EQ(euler(c.result), euler(X)) << r;
            // boundary of the cube: chi(S^(a-1)) = 1 + (-1)^(a-1)
            EXPECT_EQ(euler(c.result, &c.boundary), euler(X) * (a % 2 == 1 ? 2 : 0)) << r << " a=" << a;
        }
}

TEST(Product, LevelsShiftByCubeDimension) {
    auto X = cone(circle(6));
    auto c = make_product_cube(2, X);
    EXPECT_EQ(c.result.formal_dimension(), 4);
    for (VertexIndex v = 0; v < X.vertex_count(); ++v)
        EXPECT_EQ(c.result.vertex(c.vertex_image[0][v]).level, X.vertex(v).level + 2);
}

TEST(Recipes, AllConstructorOutputsValidate) {
    for (const auto& r : support::zoo()) {
        auto X = build_recipe(r).complex;
        EXPECT_NO_THROW(build_complex(X.spec())) << r;
    }
    EXPECT_NO_THROW(build_recipe("product_cube(1, cone(circle(6)))"));
    EXPECT_NO_THROW(build_recipe("disjoint_union(torus,sphere(2))"));
}

TEST(Recipes, ParseErrors) {
    for (const std::string bad : {"", "torus(", "cone(torus", "klein", "circle(x)", "cone(torus))", "join_sphere(1)"}) {
        try {
            (void)build_recipe(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
        }
    }
}
