#include <gtest/gtest.h>

#include <pglue/perversity.hpp>

#include "helpers.hpp"

using namespace pglue;

namespace {
Compass sierpinski_compass() {
    const auto p = sierpinski();
    return Compass(Stratification(p, {p->subset_of({"c"}), p->all()}));
}

// Homology of y vanishes outside [lo, hi].
bool supported_in(const Cx& y, int lo, int hi) {
    const auto s = homology_dims(y).support();
    return !s || (s->first >= lo && s->second <= hi);
}

// Heart conditions read off from homology degrees of q X, i_L X and i_R X.
bool heart_oracle(const Recollement& r, const Perversity& p, const Cx& x) {
    constexpr int big = 1000;
    return supported_in(r.q(x), p[1], p[1]) && supported_in(r.i_L(x), p[0], big) && supported_in(r.i_R(x), -big, p[0]);
}

Cx k_at(const PosetPtr& p, int deg) { return Cx::concentrated(constant(p), deg); }
}  // namespace

TEST(PervertedProvider, Examples) {
    const auto p = th::diamond();
    const auto t0 = perverted_provider(p, 0);
    const auto t1 = perverted_provider(p, 1);
    const Cx sky = Cx::concentrated(skyscraper(p, 0), 0);
    EXPECT_TRUE(t0->is_ge0(sky) && t0->is_lt0(shift(sky, -1)));
    EXPECT_FALSE(t1->is_ge0(sky));
    EXPECT_TRUE(t1->is_lt0(sky));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Cx x = random_complex(p, {}, s);
        EXPECT_EQ(t1->is_ge0(shift(x, 1)), t0->is_ge0(x));
        EXPECT_EQ(t1->is_lt0(shift(x, 1)), t0->is_lt0(x));
    }
}

TEST(ShiftedProvider, MatchesShiftedStandard) {
    const auto p = th::diamond();
    const ShiftedProvider moved(perverted_provider(p, 0), 2);
    const auto t2 = perverted_provider(p, 2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Cx x = random_complex(p, {-2, 2, 3, 4, 2}, s);
        EXPECT_EQ(moved.is_ge0(x), t2->is_ge0(x));
        EXPECT_EQ(moved.is_lt0(x), t2->is_lt0(x));
        EXPECT_EQ(homology_dims(moved.coreflect(x).source()), homology_dims(t2->coreflect(x).source()));
    }
}

TEST(Perverse, ZeroIsInEveryHeart) {
    const Compass c = sierpinski_compass();
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) EXPECT_TRUE(is_perverse(c, {a, b}, Cx::zero(c.root())));
}

TEST(Perverse, AgreesWithHomologyOracleOnSierpinski) {
    const Compass c = sierpinski_compass();
    const Recollement& r = *c.edge(0, 0, 1);
    int perverse = 0;
    for (const Perversity& p : {Perversity{0, 0}, Perversity{-1, 0}, Perversity{1, -1}, Perversity{0, 2}}) {
        std::vector<Cx> xs;
        for (std::uint64_t s = 0; s < 25; ++s) xs.push_back(random_complex(c.root(), {}, s));
        xs.push_back(shift(r.i(k_at(r.closed_part(), 0)), -1));
        xs.push_back(r.i(k_at(r.closed_part(), p[0])));
        xs.push_back(r.q_L(k_at(r.open_part(), p[1])));
        xs.push_back(r.q_R(k_at(r.open_part(), p[1])));
        for (const Cx& base : xs)
            for (int m = -1; m <= 1; ++m) {
                const Cx x = shift(base, m);
                const bool got = is_perverse(c, p, x);
                EXPECT_EQ(got, heart_oracle(r, p, x)) << describe(p);
                perverse += got;
            }
    }
    EXPECT_GT(perverse, 0);
}

TEST(Perverse, SkyscraperAtClosedPointShiftedDown) {
    const Compass c = sierpinski_compass();
    const Recollement& r = *c.edge(0, 0, 1);
    const Cx x = shift(r.i(k_at(r.closed_part(), 0)), -1);
    EXPECT_TRUE(is_perverse(c, {-1, 0}, x));
    EXPECT_FALSE(is_perverse(c, {0, 0}, x));
}

TEST(Equivariance, IdentityAndConstantSheaf) {
    const Compass c = sierpinski_compass();
    const Cx k = k_at(c.root(), 0);
    for (const Perversity& p : {Perversity{0, 0}, Perversity{2, -1}}) {
        const auto t = glued_perverted(c, p);
        EXPECT_TRUE(is_qiso(t->reflect_map(identity(k))));
    }
    const auto t00 = glued_perverted(c, {0, 0}), t11 = glued_perverted(c, {1, 1});
    EXPECT_EQ(t00->is_ge0(k), t11->is_ge0(shift(k, 1)));
    EXPECT_EQ(t00->is_lt0(k), t11->is_lt0(shift(k, 1)));
}

TEST(Equivariance, SuiteOnSierpinskiAndChain) {
    for (const auto& rep : {shift_equivariance_check(sierpinski_compass(), 20, 1),
                            shift_equivariance_check(Compass(singleton_strata(chain_poset({"c", "m", "o"}))), 5, 2)})
        for (const auto& ch : rep) EXPECT_TRUE(ch.ok()) << ch;
}
