#include <gtest/gtest.h>

#include "ihc/constructors.hpp"
#include "ihc/perversity.hpp"

using namespace ihc;

namespace {

std::uint32_t apex_of(const FilteredComplex& X) {
    for (const auto& S : X.strata())
        if (S.dim == 0) return S.index;
    throw std::logic_error("no apex");
}

}  // namespace

TEST(FromCodim, ZeroTopAndGrowthLaw) {
    auto X = cone(torus());
    EXPECT_EQ(Perversity::from_codim(X, {0, 0, 0}), Perversity::zero(X));
    // t(i) = i - 2 gives 1 at the codim-3 apex
    auto t = Perversity::from_codim(X, {-1, 0, 1});
    EXPECT_EQ(t(apex_of(X)), 1);
    EXPECT_EQ(t, Perversity::top(X));
    EXPECT_THROW(Perversity::from_codim(X, {0, 0, 5}, true), Error);
    EXPECT_NO_THROW(Perversity::from_codim(X, {0, 0, 5}, false));
    try {
        (void)Perversity::from_codim(X, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingCodim);
    }
}

TEST(Complementary, ValuesAndInvolution) {
    auto X = cone(torus());
    EXPECT_EQ(Perversity::zero(X).complementary()(apex_of(X)), 1);
    auto C = cone(circle(6));
    Perversity p(C);
    p.set(apex_of(C), 2);
    EXPECT_EQ(p.complementary()(apex_of(C)), -2);
    for (int v = -3; v <= 3; ++v) {
        Perversity q(X);
        q.set(apex_of(X), v);
        EXPECT_EQ(q.complementary().complementary(), q);
    }
}

TEST(Combine, UnitOrderAndPointwise) {
    auto X = cone(torus());
    auto z = Perversity::zero(X), t = Perversity::top(X);
    EXPECT_EQ(add(z, t), t);
    EXPECT_TRUE(leq(z, t));
    EXPECT_FALSE(leq(add(t, t), z));
    auto C = cone(circle(6));
    auto tc = Perversity::top(C);
    EXPECT_EQ(add(tc, tc)(apex_of(C)), 0);
    EXPECT_EQ(std::get<bool>(combine(z, t, PerversityOp::Leq)), true);
    EXPECT_EQ(std::get<Perversity>(combine(z, t, PerversityOp::Max)), t);
    try {
        (void)add(z, Perversity::zero(C));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ComplexMismatch);
    }
}

TEST(Combine, AddIsAssociativeCommutativeAndCompatibleWithOrder) {
    auto X = join_sphere(0, circle(3));
    std::vector<Perversity> ps;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            Perversity p(X);
            int i = 0;
            for (const auto& S : X.strata())
                if (!S.regular) p.set(S.index, i++ == 0 ? a : b);
            ps.push_back(p);
        }
    for (const auto& p : ps)
        for (const auto& q : ps) {
            EXPECT_EQ(add(p, q), add(q, p));
            for (const auto& r : ps) {
                EXPECT_EQ(add(add(p, q), r), add(p, add(q, r)));
                if (leq(p, q)) { EXPECT_TRUE(leq(add(p, r), add(q, r))); }
            }
        }
}

TEST(Perversity, RegularStrataStayZero) {
    auto X = cone(circle(6));
    Perversity p(X);
    EXPECT_THROW(p.set(1, 1), Error);
}

TEST(Induce, ConeProductJoin) {
    auto L = circle(6);
    auto c = make_cone(L);
    EXPECT_EQ(induce(Perversity::zero(L), c, 0), Perversity::zero(c.result));

    auto K = cone(circle(6));
    Perversity pk(K);
    pk.set(apex_of(K), 1);
    auto pc = make_product_cube(1, K);
    auto pushed = induce(pk, pc, 0);
    for (const auto& S : K.strata()) {
        const auto T = pc.result.stratum_index(pc.vertex_image[0][*K.find_vertex(S.name)]);
        EXPECT_EQ(pushed(T), pk(S.index));
        EXPECT_EQ(pc.result.strata()[T].codim, S.codim);
    }

    auto j = make_join_sphere(0, torus());
    EXPECT_EQ(induce(Perversity::zero(torus()), j, 1), Perversity::top(j.result));
    EXPECT_EQ(pullback(pushed, pc), pk);
    try {
        (void)induce(Perversity::zero(torus()), c, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAConstructorImage);
    }
}

TEST(Parse, AllForms) {
    auto X = join_sphere(0, torus());
    EXPECT_EQ(parse_perversity(X, "zero"), Perversity::zero(X));
    EXPECT_EQ(parse_perversity(X, "top"), Perversity::top(X));
    EXPECT_EQ(parse_perversity(X, "codim:0,0,1"), Perversity::top(X));
    EXPECT_EQ(parse_perversity(X, "dual:zero"), Perversity::top(X));
    const auto& S = X.strata()[0];
    auto p = parse_perversity(X, "strata:{" + S.name + ":-1}");
    EXPECT_EQ(p(S.index), -1);
    for (const std::string bad : {"codim:0,a,1", "strata:p0:1", "middle", "strata:{nope:1}"})
        EXPECT_THROW(parse_perversity(X, bad), Error) << bad;
}
