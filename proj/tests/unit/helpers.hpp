#pragma once

#include <pglue/complex.hpp>

#include <random>

namespace th {

using namespace pglue;

inline PosetPtr diamond() {
    return Poset::build({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}, "diamond");
}

/// [A --d--> B] with A in degree lo+1 and B in degree lo.
inline Cx two_term(const Rep& a, const Rep& b, const std::vector<Mat>& d, int lo = 0) {
    std::vector<Mat> z;
    for (int x = 0; x < b.poset()->size(); ++x) z.push_back(Mat::zero(0, b.dim(x)));
    return Cx(b.poset(), lo, {b, a}, {z, d});
}

/// Complex of vector spaces over the one-point poset.
inline PosetPtr point() { return Poset::build({"a"}, {}, "point"); }

inline Mat random_mat(std::mt19937_64& g, std::size_t r, std::size_t c) {
    Mat m(r, c);
    std::uniform_int_distribution<Elem> u(0, characteristic() - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = u(g);
    return m;
}

/// Brute-force rank over GF(p) for small matrices: count of distinct vectors in the row space is p^rank.
inline std::size_t brute_rank(const Mat& m) {
    const Elem p = characteristic();
    std::size_t count = 0;
    std::vector<Elem> coef(m.rows(), 0);
    std::vector<std::vector<Elem>> seen;
    while (true) {
        std::vector<Elem> v(m.cols(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = gf::add(v[j], gf::mul(coef[i], m(i, j)));
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
        std::size_t i = 0;
        while (i < coef.size() && ++coef[i] == p) coef[i++] = 0;
        if (i == coef.size()) break;
    }
    count = seen.size();
    std::size_t r = 0, q = 1;
    while (q < count) q *= p, ++r;
    return r;
}

}  // namespace th
