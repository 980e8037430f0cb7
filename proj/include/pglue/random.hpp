#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "complex.hpp"

namespace pglue {

/// Basis of the space of chain maps X -> Y: the kernel of the naturality and
/// commutation equations in the unknown component matrices.
inline std::vector<ChainMap> chain_map_space(const Cx& x, const Cx& y) {
    if (!same_poset(x.poset(), y.poset())) throw InputError("chain_map_space: different posets");
    const Poset& p = *x.poset();
    const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    // Unknown f_n(e) occupies a dim_Y x dim_X row-major block.
    std::vector<std::vector<std::size_t>> off(hi - lo + 1, std::vector<std::size_t>(p.size()));
    std::size_t nvar = 0;
    for (int n = lo; n <= hi; ++n)
        for (int e = 0; e < p.size(); ++e) {
            off[n - lo][e] = nvar;
            nvar += static_cast<std::size_t>(x.dim(n, e) * y.dim(n, e));
        }
    if (nvar == 0) return {};
    std::vector<std::vector<Elem>> rows;
    // Adds the equation L f_n(a) - f_m(b) R = 0 entrywise, for blocks of equal output shape.
    auto add_eq = [&](int n1, int e1, const Mat& left, const Mat& right1, int n2, int e2, const Mat& left2, const Mat& right2) {
        // left * f_{n1}(e1) * right1 - left2 * f_{n2}(e2) * right2
        const std::size_t R = left.rows(), C = right1.cols();
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t c = 0; c < C; ++c) {
                std::vector<Elem> row(nvar, 0);
                bool any = false;
                auto put = [&](int n, int e, const Mat& L, const Mat& Rm, Elem sgn) {
                    const int dy = y.dim(n, e), dx = x.dim(n, e);
                    for (int i = 0; i < dy; ++i) {
                        if (!L(r, i)) continue;
                        for (int j = 0; j < dx; ++j) {
                            if (!Rm(j, c)) continue;
                            auto& slot = row[off[n - lo][e] + static_cast<std::size_t>(i * dx + j)];
                            slot = gf::add(slot, gf::mul(sgn, gf::mul(L(r, i), Rm(j, c))));
                            any = true;
                        }
                    }
                };
                put(n1, e1, left, right1, 1);
                put(n2, e2, left2, right2, gf::neg(1));
                if (any) rows.push_back(std::move(row));
            }
    };
    for (int n = lo; n <= hi; ++n) {
        for (std::size_t k = 0; k < p.covers().size(); ++k) {
            auto [a, b] = p.covers()[k];
            if (x.dim(n, a) == 0 || y.dim(n, b) == 0) continue;
            // Y(a<b) f_n(a) = f_n(b) X(a<b)
            add_eq(n, a, y.structure(n, a, b), Mat::identity(x.dim(n, a)), n, b, Mat::identity(y.dim(n, b)),
                   x.structure(n, a, b));
        }
        for (int e = 0; e < p.size(); ++e) {
            if (x.dim(n, e) == 0 || y.dim(n - 1, e) == 0) continue;
            // d_Y f_n = f_{n-1} d_X
            add_eq(n, e, y.d(n, e), Mat::identity(x.dim(n, e)), n - 1, e, Mat::identity(y.dim(n - 1, e)), x.d(n, e));
        }
    }
    Mat sys(rows.size(), nvar);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < nvar; ++c) sys(r, c) = rows[r][c];
    const Mat ker = kernel_basis(sys);
    std::vector<ChainMap> out;
    for (std::size_t v = 0; v < ker.cols(); ++v)
        out.emplace_back(x, y, [&](int n, int e) {
            const int dy = y.dim(n, e), dx = x.dim(n, e);
            Mat m(dy, dx);
            for (int i = 0; i < dy; ++i)
                for (int j = 0; j < dx; ++j) m(i, j) = ker(off[n - lo][e] + static_cast<std::size_t>(i * dx + j), v);
            return m;
        });
    return out;
}

/// Uniformly random element of the chain-map space (zero if the space is trivial).
inline ChainMap random_chain_map(const Cx& x, const Cx& y, std::mt19937_64& rng) {
    const auto basis = chain_map_space(x, y);
    std::uniform_int_distribution<Elem> coef(0, characteristic() - 1);
    ChainMap f = zero_map(x, y);
    for (const auto& b : basis) {
        const Elem c = coef(rng);
        if (c) f = add(f, scale(b, c));
    }
    return f;
}

struct RandomParams {
    int lo = -1;
    int hi = 1;
    int generators = 3;  ///< number of shifted projectives/skyscrapers in the starting sum
    int max_dim = 4;     ///< bound on every pointwise dimension
    int rounds = 2;      ///< cone iterations
};

namespace detail {
inline Cx random_pieces(const PosetPtr& p, int count, int lo, int hi, std::mt19937_64& rng) {
    Cx acc = Cx::zero(p);
    if (hi < lo || p->size() == 0) return acc;
    std::uniform_int_distribution<int> elem(0, p->size() - 1), deg(lo, hi), kind(0, 2);
    for (int i = 0; i < count; ++i) {
        const int e = elem(rng), d = deg(rng), kd = kind(rng);
        const Rep r = kd == 0 ? skyscraper(p, e) : projective(p, e);
        acc = direct_sum(acc, Cx::concentrated(r, d));
    }
    return acc;
}

inline int max_pointwise_dim(const Cx& x) {
    int m = 0;
    for (int n = x.lo(); n <= x.hi(); ++n)
        for (int e = 0; e < x.poset()->size(); ++e) m = std::max(m, x.dim(n, e));
    return m;
}
}  // namespace detail

/// Deterministic in `seed`. Starts from a sum of shifted projectives and skyscrapers and
/// replaces it by cones of random chain maps from further such sums. Degrees stay in
/// [lo, hi]; pointwise dimensions stay at most max_dim.
inline Cx random_complex(const PosetPtr& p, const RandomParams& params, std::uint64_t seed) {
    if (params.generators <= 0 || params.hi < params.lo || p->size() == 0) return Cx::zero(p);
    std::mt19937_64 rng(seed);
    Cx x;
    do {
        x = detail::random_pieces(p, params.generators, params.lo, params.hi, rng);
    } while (detail::max_pointwise_dim(x) > params.max_dim);
    for (int r = 0; r < params.rounds; ++r) {
        const int count = 1 + static_cast<int>(rng() % 2);
        const Cx b = detail::random_pieces(p, count, params.lo, params.hi - 1, rng);
        if (b.is_zero()) continue;
        const ChainMap f = random_chain_map(b, x, rng);
        Cx c = cone(f).cone;
        if (detail::max_pointwise_dim(c) <= params.max_dim) x = std::move(c);
    }
    return x;
}

/// Random connected-ish poset on `n` elements named p0..p{n-1}, with a stratification into
/// `strata` pieces cut from a linear extension.
struct RandomStratified {
    PosetPtr poset;
    std::vector<Subset> closed_chain;
};

inline RandomStratified random_stratified_poset(int n, int strata, std::uint64_t seed, double edge_prob = 0.4) {
    if (strata < 1 || strata > n) throw InputError("random_stratified_poset: need 1 <= strata <= elements");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution edge(edge_prob);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> rel;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) rel.emplace_back(ids[i], ids[j]);
    auto p = Poset::build(ids, rel, "random" + std::to_string(seed));
    // Cut points 0 < c_1 < ... < c_{strata-1} < n of the linear extension.
    std::vector<int> cuts;
    for (int i = 1; i < n; ++i) cuts.push_back(i);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(strata - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);
    const auto& order = p->linear_order();
    std::vector<Subset> chain;
    for (int c : cuts) chain.emplace_back(order.begin(), order.begin() + c);
    for (auto& s : chain) std::sort(s.begin(), s.end());
    return {p, chain};
}

}  // namespace pglue
