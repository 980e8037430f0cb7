#include <gtest/gtest.h>

#include <pglue/random.hpp>

#include "helpers.hpp"

using namespace pglue;

TEST(RandomComplex, ZeroGenerators) {
    RandomParams s;
    s.generators = 0;
    EXPECT_TRUE(random_complex(sierpinski(), s, 1).is_zero());
}

TEST(RandomComplex, Deterministic) {
    const auto p = th::diamond();
    EXPECT_EQ(random_complex(p, {}, 42), random_complex(p, {}, 42));
}

TEST(RandomComplex, BoundsAndInvariants) {
    const auto p = sierpinski();
    bool some_nonsplit = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Cx x = random_complex(p, {}, seed);
        // Construction already validates d^2 = 0 and naturality; re-run through make().
        std::vector<Rep> t;
        std::vector<std::vector<Mat>> d;
        for (int n = x.lo(); n <= x.hi(); ++n) {
            t.push_back(x.term(n));
            std::vector<Mat> dn;
            for (int e = 0; e < p->size(); ++e) dn.push_back(n == x.lo() ? Mat::zero(0, x.dim(n, e)) : x.d(n, e));
            d.push_back(dn);
        }
        EXPECT_TRUE(Cx::make(p, x.lo(), t, d).first) << seed;
        EXPECT_GE(x.lo(), -1);
        EXPECT_LE(x.hi(), 1);
        for (int n = x.lo(); n <= x.hi(); ++n)
            for (int e = 0; e < p->size(); ++e) {
                EXPECT_LE(x.dim(n, e), 4);
                if (!x.d(n, e).is_zero()) some_nonsplit = true;
            }
    }
    EXPECT_TRUE(some_nonsplit);
}

TEST(ChainMapSpace, EndomorphismsOfSkyscraper) {
    const auto p = sierpinski();
    const Cx s = Cx::concentrated(skyscraper(p, 0), 0);
    EXPECT_EQ(chain_map_space(s, s).size(), 1u);
    EXPECT_EQ(chain_map_space(s, shift(s, 1)).size(), 0u);
}

TEST(ChainMapSpace, MatchesHomSpaceInOneDegree) {
    const auto p = th::diamond();
    const Rep m = direct_sum(constant(p), skyscraper(p, 2));
    const Rep n = direct_sum(projective(p, 1), projective(p, 0));
    EXPECT_EQ(chain_map_space(Cx::concentrated(m, 0), Cx::concentrated(n, 0)).size(), hom_space(m, n).size());
}

TEST(RandomStratified, ValidStratification) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = random_stratified_poset(6, 3, seed);
        EXPECT_NO_THROW(Stratification(r.poset, r.closed_chain));
        EXPECT_EQ(r.closed_chain.size(), 3u);
    }
}
