#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace pglue;

TEST(Rep, DiamondCommutativityChecked) {
    const auto d = th::diamond();
    // Covers in Hasse order; a path through b doubles, a path through c does not.
    std::vector<Mat> maps;
    for (auto [a, b] : d->covers())
        maps.push_back(d->name_of(a) == "b" ? Mat{{2}} : Mat{{1}});
    EXPECT_THROW(Rep(d, {1, 1, 1, 1}, maps), InputError);
    const auto [r, err] = Rep::make(d, {1, 1, 1, 1}, maps);
    EXPECT_FALSE(r);
    EXPECT_FALSE(err.empty());
    EXPECT_NO_THROW(Rep(d, {1, 1, 1, 1}, std::vector<Mat>(4, Mat{{1}})));
}

TEST(HomSpace, SkyscraperEndomorphisms) {
    const auto p = sierpinski();
    const auto s = skyscraper(p, p->index_of("c"));
    EXPECT_EQ(hom_space(s, s).size(), 1u);
}

TEST(HomSpace, ClosedToOpenSkyscraperIsZero) {
    const auto p = sierpinski();
    const auto sc = skyscraper(p, p->index_of("c"));
    const auto so = skyscraper(p, p->index_of("o"));
    // Enumerate all 1x1 candidate components over GF(p) at the only nonzero spot: none exist
    // since sc(o) = 0 and so(c) = 0, so every component has a zero dimension.
    EXPECT_EQ(sc.dim(p->index_of("o")) * so.dim(p->index_of("o")) + sc.dim(p->index_of("c")) * so.dim(p->index_of("c")), 0);
    EXPECT_EQ(hom_space(sc, so).size(), 0u);
}

TEST(HomSpace, ConstantSheafEndomorphisms) {
    CharacteristicScope cs(5);
    const auto p = sierpinski();
    const auto k = constant(p);
    // Brute force: pairs (l, m) in GF(5)^2 natural iff l = m.
    int natural = 0;
    for (Elem l = 0; l < 5; ++l)
        for (Elem m = 0; m < 5; ++m)
            if (!naturality_error(k, k, {Mat(1, 1, {l}), Mat(1, 1, {m})})) ++natural;
    EXPECT_EQ(natural, 5);
    EXPECT_EQ(hom_space(k, k).size(), 1u);
}

TEST(HomSpace, PosetMismatch) {
    EXPECT_THROW(hom_space(constant(sierpinski()), constant(th::diamond())), InputError);
}

TEST(RepKernel, IdentityAndZero) {
    const auto p = th::diamond();
    const auto m = direct_sum(projective(p, 0), constant(p));
    EXPECT_TRUE(rep_kernel(identity_map(m)).kernel.is_zero());
    const auto z = rep_kernel(zero_map(m, constant(p)));
    EXPECT_EQ(z.kernel, m);
    EXPECT_EQ(z.inclusion.components, identity_map(m).components);
}

TEST(RepKernel, ConstantOntoClosedSkyscraper) {
    // With c < o the quotient of the constant sheaf is the closed skyscraper; its kernel is
    // the open skyscraper. The reverse map k -> S_o is not natural.
    const auto p = sierpinski();
    const int c = p->index_of("c"), o = p->index_of("o");
    const auto k = constant(p);
    std::vector<Mat> comps(2);
    comps[c] = Mat{{1}};
    comps[o] = Mat::zero(0, 1);
    const auto ker = rep_kernel(make_rep_map(k, skyscraper(p, c), comps));
    EXPECT_EQ(ker.kernel, skyscraper(p, o));
    comps[c] = Mat::zero(0, 1);
    comps[o] = Mat{{1}};
    EXPECT_THROW(make_rep_map(k, skyscraper(p, o), comps), InputError);
}

TEST(Projective, Values) {
    const auto one = Poset::build({"a"}, {});
    EXPECT_EQ(projective(one, 0).dims(), std::vector<int>{1});
    const auto p = sierpinski();
    EXPECT_EQ(projective(p, p->index_of("c")), constant(p));
    EXPECT_EQ(projective(p, p->index_of("o")), skyscraper(p, p->index_of("o")));
    EXPECT_THROW(projective(p, 5), InputError);
}

namespace {
Rep random_rep(const PosetPtr& p, std::mt19937_64& g) {
    // Quotient of a sum of projectives by nothing, then precomposed with a random endomorphism image.
    Rep m = Rep::zero(p);
    std::uniform_int_distribution<int> pick(0, p->size() - 1);
    const int n = 1 + static_cast<int>(g() % 3);
    for (int i = 0; i < n; ++i) m = direct_sum(m, g() % 2 ? projective(p, pick(g)) : skyscraper(p, pick(g)));
    const auto ends = hom_space(m, m);
    std::vector<Mat> comps;
    for (int x = 0; x < p->size(); ++x) comps.push_back(Mat::zero(m.dim(x), m.dim(x)));
    for (const auto& e : ends) {
        const Elem s = static_cast<Elem>(g() % characteristic());
        for (int x = 0; x < p->size(); ++x) comps[x] = comps[x] + e.at(x).scaled(s);
    }
    return rep_cokernel(make_rep_map(m, m, comps)).cokernel;
}
}  // namespace

TEST(Projective, YonedaDimension) {
    std::mt19937_64 g(4);
    const auto p = th::diamond();
    for (int t = 0; t < 20; ++t) {
        const Rep m = random_rep(p, g);
        for (int x = 0; x < p->size(); ++x)
            EXPECT_EQ(static_cast<int>(hom_space(projective(p, x), m).size()), m.dim(x));
    }
}

TEST(RepKernel, RankNullityPointwise) {
    std::mt19937_64 g(8);
    const auto p = th::diamond();
    for (int t = 0; t < 20; ++t) {
        const Rep m = random_rep(p, g), n = random_rep(p, g);
        const auto hs = hom_space(m, n);
        if (hs.empty()) continue;
        const auto& f = hs[g() % hs.size()];
        const auto k = rep_kernel(f);
        const auto q = rep_cokernel(f);
        for (int x = 0; x < p->size(); ++x) {
            EXPECT_EQ(m.dim(x), k.kernel.dim(x) + static_cast<int>(rank(f.at(x))));
            EXPECT_EQ(n.dim(x), q.cokernel.dim(x) + static_cast<int>(rank(f.at(x))));
            EXPECT_TRUE((f.at(x) * k.inclusion.at(x)).is_zero());
            EXPECT_TRUE((q.projection.at(x) * f.at(x)).is_zero());
        }
    }
}

TEST(Projective, Detection) {
    const auto p = sierpinski();
    EXPECT_TRUE(is_projective(direct_sum(constant(p), skyscraper(p, p->index_of("o")))));
    EXPECT_FALSE(is_projective(skyscraper(p, p->index_of("c"))));
}
