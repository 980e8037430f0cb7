#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace pglue;

namespace {
Cx k_to_k(const Mat& d, int lo = 0) {
    const auto p = th::point();
    const Rep k = constant(p);
    return th::two_term(k, k, {d}, lo);
}
}  // namespace

TEST(Cx, RejectsNonzeroSquare) {
    const auto p = th::point();
    const Rep k = constant(p);
    std::vector<Mat> z{Mat::zero(0, 1)};
    EXPECT_THROW(Cx(p, 0, {k, k, k}, {z, {Mat{{1}}}, {Mat{{1}}}}), InputError);
    const auto [c, err] = Cx::make(p, 0, {k, k, k}, {z, {Mat{{1}}}, {Mat{{1}}}});
    EXPECT_FALSE(c);
    EXPECT_NE(err.find("degree 2"), std::string::npos);
    EXPECT_NE(err.find("element a"), std::string::npos);
}

TEST(Cx, RejectsNonNaturalDifferential) {
    const auto p = sierpinski();
    const Rep k = constant(p);
    std::vector<Mat> d(2);
    d[p->index_of("c")] = Mat{{1}};
    d[p->index_of("o")] = Mat{{2}};
    EXPECT_THROW(th::two_term(k, k, d), InputError);
}

TEST(Homology, ConeOfIdentityIsAcyclic) {
    const Cx x = k_to_k(Mat{{1}});
    EXPECT_TRUE(is_acyclic(x));
}

TEST(Homology, ZeroDifferential) {
    const auto p = sierpinski();
    const Cx x = th::two_term(constant(p), skyscraper(p, 1), {Mat::zero(0, 1), Mat::zero(1, 1)});
    EXPECT_EQ(homology(x, 1), constant(p));
    EXPECT_EQ(homology(x, 0), skyscraper(p, 1));
}

TEST(Homology, ZeroMapOverGF2) {
    CharacteristicScope s(2);
    const Cx x = k_to_k(Mat{{0}});
    EXPECT_EQ(homology_dim(x, 1, 0), 1);
    EXPECT_EQ(homology_dim(x, 0, 0), 1);
}

TEST(Homology, InducedStructureMaps) {
    // P_c -> P_c / nothing: constant sheaf homology carries identity structure map.
    const auto p = sierpinski();
    const Cx x = Cx::concentrated(constant(p), 2);
    EXPECT_EQ(homology(x, 2), constant(p));
    EXPECT_TRUE(homology(x, 1).is_zero());
}

TEST(Shift, Basics) {
    const auto p = sierpinski();
    const Cx x = Cx::concentrated(skyscraper(p, 0), 0);
    EXPECT_EQ(shift(x, 0), x);
    const Cx y = shift(x, 1);
    EXPECT_EQ(y.lo(), 1);
    EXPECT_EQ(homology_dim(y, 1, 0), 1);
    const Cx z = k_to_k(Mat{{3}});
    EXPECT_EQ(shift(shift(z, 1), -1), z);
    EXPECT_EQ(shift(z, 1).d(2, 0), Mat{{-3}});
}

TEST(Cone, IdentityIsAcyclicAndZeroSplits) {
    const auto p = sierpinski();
    const Cx x = th::two_term(constant(p), constant(p), {Mat{{0}}, Mat{{0}}});
    EXPECT_TRUE(is_acyclic(cone(identity(x)).cone));
    const Cx y = Cx::concentrated(skyscraper(p, 1), 0);
    const Cx c = cone(zero_map(x, y)).cone;
    const auto hd = homology_dims(direct_sum(y, shift(x, 1)));
    EXPECT_EQ(homology_dims(c), hd);
}

TEST(Cone, MultiplicationByThreeOverGF5) {
    CharacteristicScope s(5);
    const Cx k = Cx::concentrated(constant(th::point()), 0);
    const ChainMap f(k, k, [](int, int) { return Mat{{3}}; });
    EXPECT_TRUE(is_qiso(f));
    EXPECT_TRUE(is_acyclic(cone(f).cone));
}

TEST(Qiso, Examples) {
    const auto p = sierpinski();
    const Cx x = Cx::concentrated(skyscraper(p, 0), 0);
    EXPECT_TRUE(is_qiso(identity(x)));
    EXPECT_FALSE(is_qiso(zero_map(Cx::zero(p), x)));
    const Cx a = k_to_k(Mat{{1}});
    EXPECT_TRUE(is_qiso(zero_map(a, Cx::zero(a.poset()))));
}

TEST(Fib, ProjectionAndShape) {
    const auto p = sierpinski();
    const Cx x = th::two_term(constant(p), constant(p), {Mat{{1}}, Mat{{1}}});
    const Cx y = th::two_term(skyscraper(p, 0), skyscraper(p, 0), {Mat{{1}}, Mat::zero(0, 0)});
    const ChainMap f(x, y, [&](int n, int e) { return e == 0 ? Mat{{1}} : Mat::zero(y.dim(n, e), x.dim(n, e)); });
    const auto fb = fib(f);
    EXPECT_EQ(fb.fiber, shift(cone(f).cone, -1));
    EXPECT_EQ(fb.projection.source(), fb.fiber);
    EXPECT_THROW(fib(f, true), InputError);
}

TEST(Truncation, Examples) {
    const auto p = sierpinski();
    const Cx x = Cx::concentrated(constant(p), 0);
    EXPECT_TRUE(is_qiso(truncate_ge(x, 0).inclusion));
    EXPECT_TRUE(is_acyclic(truncate_ge(shift(x, -1), 0).truncation));
    const Cx z = k_to_k(Mat{{0}});
    const auto t = truncate_ge(z, 1).truncation;
    EXPECT_EQ(homology_dim(t, 1, 0), 1);
    EXPECT_EQ(homology_dim(t, 0, 0), 0);
    const auto r = truncate_lt(z, 1).truncation;
    EXPECT_EQ(homology_dim(r, 1, 0), 0);
    EXPECT_EQ(homology_dim(r, 0, 0), 1);
}

TEST(RestrictExtend, RoundTripOnOpenPoint) {
    const auto p = sierpinski();
    const auto u = p->induced(p->subset_of({"o"}));
    const Cx x = th::two_term(constant(p), constant(p), {Mat{{2}}, Mat{{2}}});
    const Cx xu = restrict_to(x, u);
    EXPECT_EQ(xu.dim(0, 0), 1);
    const Cx back = extend_by_zero(xu, p);
    EXPECT_EQ(back.dim(0, p->index_of("c")), 0);
    EXPECT_EQ(restrict_to(back, u), xu);
}

// A complex over an equal poset induced from a different parent is placed by the
// embedding that is passed in, not by its own.
TEST(RestrictExtend, EmbeddingComesFromGivenSubposet) {
    const auto p = chain_poset({"c", "m", "o"});
    const auto a = p->induced(p->subset_of({"c", "m"}));
    const auto m_in_a = a->induced(a->subset_of({"m"}));
    const auto m_elsewhere = p->induced(p->subset_of({"m", "o"}))->induced({0});
    ASSERT_TRUE(same_poset(m_in_a, m_elsewhere));
    const Cx x = Cx::concentrated(constant(m_elsewhere), 0);
    const Cx y = extend_by_zero(x, m_in_a, a);
    EXPECT_EQ(y.dim(0, a->index_of("m")), 1);
    EXPECT_EQ(y.dim(0, a->index_of("c")), 0);
    EXPECT_THROW(extend_by_zero(x, a, p), InputError);
}
