#include <gtest/gtest.h>

#include <pglue/compass.hpp>

#include "helpers.hpp"

using namespace pglue;

namespace {
Compass chain_compass(int n) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(n == 3 ? std::string(1, "cmo"[i]) : "x" + std::to_string(i));
    return Compass(singleton_strata(chain_poset(ids)));
}
void expect_all_pass(const Report& rep) {
    for (const auto& c : rep) EXPECT_TRUE(c.ok()) << c;
}
}  // namespace

TEST(Compass, SierpinskiIsOneRecollement) {
    const auto p = sierpinski();
    const Compass c(Stratification(p, {p->subset_of({"c"}), p->all()}));
    EXPECT_EQ(c.recollement_count(), 1);
    EXPECT_TRUE(elementary_squares(c).empty());
    const auto& r = *c.edge(0, 0, 1);
    EXPECT_EQ(r.closed_part()->name_of(0), "c");
    EXPECT_EQ(r.open_part()->name_of(0), "o");
}

// One recollement per split of each interval: [0,1], [1,2], and two splits of [0,2].
TEST(Compass, Counts) {
    const Compass c3 = chain_compass(3);
    EXPECT_EQ(c3.recollement_count(), 4);
    EXPECT_EQ(elementary_squares(c3).size(), 1u);
    const Compass c4 = chain_compass(4);
    EXPECT_EQ(c4.recollement_count(), 10);
    EXPECT_EQ(elementary_squares(c4).size(), 3u);
    // Composite intervals, i.e. nodes that are the union of two contiguous ones.
    int composite = 0;
    for (int i = 0; i <= c4.top(); ++i)
        for (int j = i + 1; j <= c4.top(); ++j) ++composite;
    EXPECT_EQ(composite, 6);
}

TEST(Compass, EdgesPassRecollementAxioms) {
    const Compass c = chain_compass(3);
    for (const auto& s : c.splits()) expect_all_pass(check_recollement_axioms(*c.edge(s[0], s[1], s[2]), 5, 3));
}

TEST(Compass, EdgeSubposetsMatchNodes) {
    const auto rs = random_stratified_poset(6, 3, 12);
    const Compass c(Stratification(rs.poset, rs.closed_chain));
    for (const auto& s : c.splits()) {
        const auto& r = *c.edge(s[0], s[1], s[2]);
        EXPECT_TRUE(same_poset(r.closed_part(), c.node(s[0], s[1])));
        EXPECT_TRUE(same_poset(r.open_part(), c.node(s[1] + 1, s[2])));
    }
}

TEST(BC, ZeroAndConstant) {
    const Compass c = chain_compass(3);
    const BCSquare sq = elementary_squares(c)[0];
    const auto& b = c.node(0, 2);
    const BCCells z = bc_cells(c, sq, Cx::zero(b));
    EXPECT_TRUE(z.left_restrict && z.left_extend && z.right);
    // Constant sheaf on {c, m} extended by zero, degree 0.
    const auto& r = *c.edge(0, 1, 2);
    const Cx m = r.i(Cx::concentrated(constant(r.closed_part()), 0));
    const BCCells k = bc_cells(c, sq, m);
    EXPECT_TRUE(k.left_restrict && k.left_extend && k.right);
}

TEST(BC, ChainAndRandomSquares) {
    const Compass c = chain_compass(3);
    for (const auto& sq : elementary_squares(c)) expect_all_pass(bc_check(c, sq, 20, 1));
    const auto rs = random_stratified_poset(7, 4, 5);
    const Compass c2(Stratification(rs.poset, rs.closed_chain));
    for (const auto& sq : elementary_squares(c2)) expect_all_pass(bc_check(c2, sq, 5, 2));
}

TEST(Parenthesization, EnumerateAndParse) {
    EXPECT_EQ(all_parenthesizations(0, 2).size(), 2u);
    EXPECT_EQ(all_parenthesizations(0, 3).size(), 5u);
    EXPECT_EQ(default_parenthesizations(4).size(), 2u);
    EXPECT_EQ(left_comb(2)->describe(), "((0 1) 2)");
    EXPECT_EQ(right_comb(2)->describe(), "(0 (1 2))");
    EXPECT_EQ(parse_parenthesization(" ((0 1)  2) ", 2)->describe(), "((0 1) 2)");
    EXPECT_THROW(parse_parenthesization("((0 2) 1)", 2), InputError);
    EXPECT_THROW(parse_parenthesization("(0 1)", 2), InputError);
    EXPECT_THROW(parse_parenthesization("(0 1", 1), InputError);
}

TEST(IteratedGlue, SingleSplitIsPlainGluing) {
    const auto p = sierpinski();
    const Compass c(Stratification(p, {p->subset_of({"c"}), p->all()}));
    const auto t = iterated_glue(c, {0, 1}, join(leaf(0), leaf(1)));
    const auto& r = c.edge(0, 0, 1);
    const auto g = glued_provider(r, standard_provider(r->closed_part(), 0), standard_provider(r->open_part(), 1));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Cx x = random_complex(p, {}, s);
        EXPECT_EQ(t->is_ge0(x), g->is_ge0(x));
        EXPECT_EQ(t->is_lt0(x), g->is_lt0(x));
        EXPECT_EQ(t->coreflect(x), g->coreflect(x));
    }
    EXPECT_THROW(iterated_glue(c, {0}, join(leaf(0), leaf(1))), InputError);
}

TEST(IteratedGlue, ConstantSheafUnderBothCombs) {
    const Compass c = chain_compass(3);
    const Cx k = Cx::concentrated(constant(c.root()), 0);
    for (const auto& t : {left_comb(2), right_comb(2)}) {
        const auto prov = iterated_glue(c, {0, 0, 0}, t);
        EXPECT_TRUE(prov->is_ge0(k)) << t->describe();
    }
}

TEST(Winged, LeftPathsToMiddleLeafAreEqual) {
    const Compass c = chain_compass(3);
    const Cx x = random_complex(c.root(), {}, 9);
    const auto paths = paths_to_leaf(0, 2, 1);
    ASSERT_EQ(paths.size(), 2u);
    EXPECT_EQ(along_path(c, paths[0], x, false), along_path(c, paths[1], x, false));
    EXPECT_EQ(along_path(c, paths[0], x, false), restrict_to(x, c.node(1, 1)));
}

TEST(Assoc, ZeroObject) {
    const Compass c = chain_compass(3);
    const RandomParams none{0, 0, 0, 4, 0};
    expect_all_pass(assoc_check(c, {0, 0, 0}, 3, 1, none));
}

TEST(Assoc, ChainAndRandomPoset) {
    expect_all_pass(assoc_check(chain_compass(3), {0, 0, 0}, 10, 1));
    expect_all_pass(assoc_check(chain_compass(3), {1, -1, 0}, 6, 2));
    const auto rs = random_stratified_poset(6, 3, 4);
    const RandomParams params{-1, 1, 2, 3, 1};
    expect_all_pass(assoc_check(Compass(Stratification(rs.poset, rs.closed_chain)), {0, 1, 0}, 4, 3, params));
}

TEST(Assoc, FourStrata) {
    const RandomParams params{-1, 1, 2, 3, 1};
    expect_all_pass(assoc_check(chain_compass(4), {0, 0, 1, 0}, 1, 5, params, {left_comb(3), right_comb(3)}));
}
