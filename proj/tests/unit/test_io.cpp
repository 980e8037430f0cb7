#include <gtest/gtest.h>

#include <sstream>

#include <pglue/io.hpp>
#include <pglue/random.hpp>

#include "helpers.hpp"

using namespace pglue;

namespace {
std::string data(const std::string& f) { return std::string(PGLUE_DATA_DIR) + "/" + f; }

PosetFile poset_from(const std::string& text) {
    std::istringstream in(text);
    return parse_poset(in, "t.poset");
}
Cx complex_from(const std::string& text, const PosetPtr& p) {
    std::istringstream in(text);
    return parse_complex(in, p, "t.cx");
}
std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST(IoPoset, DataFiles) {
    const PosetFile s = load_poset(data("sierpinski.poset"));
    EXPECT_TRUE(same_poset(s.poset, sierpinski()));
    EXPECT_EQ(s.stratification().count(), 2);
    EXPECT_EQ(load_poset(data("chain3.poset")).stratification().count(), 3);
    const PosetFile h = load_poset(data("hexagon.poset"));
    EXPECT_EQ(h.poset->size(), 6);
    EXPECT_EQ(h.stratification().count(), 3);
}

TEST(IoPoset, RoundTrip) {
    const auto rs = random_stratified_poset(6, 3, 8);
    std::ostringstream out;
    write_poset(out, *rs.poset, rs.closed_chain);
    const PosetFile back = poset_from(out.str());
    EXPECT_TRUE(same_poset(back.poset, rs.poset));
    EXPECT_EQ(back.strata, rs.closed_chain);
}

TEST(IoPoset, ErrorsNameFileAndLine) {
    EXPECT_EQ(error_of([] { poset_from("elem a b\nrel a c\nend\n"); }), "t.poset:2: unknown element 'c'");
    EXPECT_NE(error_of([] { poset_from("elem a b\nfoo\nend\n"); }).find("t.poset:2: unknown keyword"), std::string::npos);
    EXPECT_NE(error_of([] { poset_from("elem a b\nrel a b\nrel b a\nend\n"); }).find("cycle"), std::string::npos);
    EXPECT_NE(error_of([] { poset_from("elem a b\nrel a b\nstrat b\nend\n"); }).find("not down-closed"), std::string::npos);
    EXPECT_NE(error_of([] { poset_from("elem a\n"); }).find("missing 'end'"), std::string::npos);
    EXPECT_NE(error_of([] { poset_from("elem a\nstrat z\nend\n"); }).find("t.poset:2: unknown element 'z'"), std::string::npos);
}

TEST(IoComplex, DataFiles) {
    const auto p = load_poset(data("sierpinski.poset")).poset;
    EXPECT_TRUE(load_complex(data("zero.cx"), p).is_zero());
    EXPECT_EQ(load_complex(data("constant.cx"), p), Cx::concentrated(constant(p), 0));
    EXPECT_EQ(load_complex(data("skyscraper_c.cx"), p), Cx::concentrated(skyscraper(p, 0), 1));
    EXPECT_TRUE(is_acyclic(load_complex(data("projective_c.cx"), p)));
    const Cx k = load_complex(data("constant.cx"), p), s = load_complex(data("skyscraper0_c.cx"), p);
    const ChainMap f = load_chain_map(data("constant_to_skyscraper.map"), k, s);
    EXPECT_FALSE(f.is_zero());
}

TEST(IoComplex, RoundTripKeepsDataAndHomology) {
    const auto p = th::diamond();
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Cx x = random_complex(p, {-2, 2, 4, 4, 2}, seed);
        std::ostringstream out;
        write_complex(out, x);
        const Cx back = complex_from(out.str(), p);
        EXPECT_EQ(back, x);
        EXPECT_EQ(homology_dims(back), homology_dims(x));
    }
}

TEST(IoComplex, ChainMapRoundTrip) {
    const auto p = th::diamond();
    const Cx x = random_complex(p, {}, 1), y = random_complex(p, {}, 2);
    std::mt19937_64 rng(3);
    const ChainMap f = random_chain_map(x, y, rng);
    std::ostringstream out;
    write_chain_map(out, f);
    std::istringstream in(out.str());
    EXPECT_EQ(parse_chain_map(in, x, y), f);
}

TEST(IoComplex, Errors) {
    const auto p = sierpinski();
    auto err = [&](const std::string& body) { return error_of([&] { complex_from(body, p); }); };
    EXPECT_NE(err("complex over other char=101 degrees 0..0\nend\n").find("t.cx:1:"), std::string::npos);
    EXPECT_NE(err("complex over sierpinski char=7 degrees 0..0\nend\n").find("characteristic"), std::string::npos);
    EXPECT_NE(err("complex over sierpinski char=101 degrees 0..0\ndims 0 c=1 o=1\nmap 0 c o = 1 0\nend\n")
                  .find("t.cx:3: matrix row 1 has 2 entries, expected 1"),
              std::string::npos);
    EXPECT_NE(err("complex over sierpinski char=101 degrees 0..0\ndims 3 c=1\nend\n").find("t.cx:2: degree 3 outside"),
              std::string::npos);
    EXPECT_NE(err("complex over sierpinski char=101 degrees 0..0\ndims 0 c=1 o=1\nmap 0 o c = 1\nend\n").find("not a cover"),
              std::string::npos);
    // d_1 d_2 = 1 at c.
    const std::string bad = "complex over sierpinski char=101 degrees 0..2\n"
                            "dims 0 c=1\ndims 1 c=1\ndims 2 c=1\ndiff 1 c = 1\ndiff 2 c = 1\nend\n";
    EXPECT_NE(err(bad).find("degree 2, element c"), std::string::npos) << err(bad);
    // Structure maps that do not commute with the differential.
    const std::string unnatural = "complex over sierpinski char=101 degrees 0..1\n"
                                  "dims 0 c=1 o=1\ndims 1 c=1 o=1\nmap 0 c o = 1\nmap 1 c o = 1\ndiff 1 c = 1\nend\n";
    EXPECT_NE(err(unnatural).find("not natural"), std::string::npos) << err(unnatural);
}
