#pragma once

#include <map>
#include <optional>
#include <vector>

#include "complex.hpp"

namespace pglue {

/// A complex of free representations, P_n = (+)_j P_{x_j}, stored by generators.
/// D[n] has entry (i, j) = coefficient of generator i (degree n-1) in d(generator j);
/// it can be nonzero only when x_i <= x_j.
struct ProjCx {
    PosetPtr poset;
    int lo = 0;
    std::vector<std::vector<int>> gens;  ///< gens[n - lo][j] = element of generator j
    std::vector<Mat> D;                  ///< D[n - lo] : |gens(n-1)| x |gens(n)|

    [[nodiscard]] int hi() const { return lo + static_cast<int>(gens.size()) - 1; }
    [[nodiscard]] int count(int n) const {
        return (n < lo || n > hi()) ? 0 : static_cast<int>(gens[n - lo].size());
    }
    [[nodiscard]] int elem(int n, int j) const { return gens[n - lo][j]; }
    [[nodiscard]] Mat diff(int n) const {
        if (n <= lo || n > hi()) return Mat::zero(count(n - 1), count(n));
        return D[n - lo];
    }
    [[nodiscard]] int total_generators() const {
        int s = 0;
        for (const auto& g : gens) s += static_cast<int>(g.size());
        return s;
    }
};

/// Generators of P_n whose element lies below y, in generator order.
inline std::vector<std::size_t> basis_at(const ProjCx& p, int n, int y) {
    std::vector<std::size_t> out;
    for (int j = 0; j < p.count(n); ++j)
        if (p.poset->leq(p.elem(n, j), y)) out.push_back(static_cast<std::size_t>(j));
    return out;
}

inline Cx materialize(const ProjCx& p) {
    if (p.gens.empty()) return Cx::zero(p.poset);
    return assemble(
        p.poset, p.lo, p.hi(), [&](int n, int y) { return static_cast<int>(basis_at(p, n, y).size()); },
        [&](int n, int k) {
            auto [a, b] = p.poset->covers()[k];
            const auto ba = basis_at(p, n, a), bb = basis_at(p, n, b);
            Mat m(bb.size(), ba.size());
            for (std::size_t c = 0; c < ba.size(); ++c)
                m(static_cast<std::size_t>(std::find(bb.begin(), bb.end(), ba[c]) - bb.begin()), c) = 1;
            return m;
        },
        [&](int n, int y) {
            const auto cols = basis_at(p, n, y), rows = basis_at(p, n - 1, y);
            const Mat d = p.diff(n);
            Mat m(rows.size(), cols.size());
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = d(rows[r], cols[c]);
            return m;
        });
}

/// A family of vectors v_{n,j} in T_{n+shift}(x_j), one per generator of P. With shift 0
/// this describes a map of graded representations P -> T; with shift 1 a homotopy.
struct GenVectors {
    int shift = 0;
    std::vector<std::vector<Mat>> v;  ///< v[n - P.lo][j], column vectors

    [[nodiscard]] const Mat& at(const ProjCx& p, int n, int j) const { return v[n - p.lo][j]; }
};

/// Components at (n, y) of the graded map P_n -> T_{n+shift} determined by generator images.
inline Mat generator_component(const ProjCx& p, const Cx& t, const GenVectors& g, int n, int y) {
    const auto cols = basis_at(p, n, y);
    Mat m(t.dim(n + g.shift, y), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const int x = p.elem(n, static_cast<int>(cols[c]));
        if (m.rows() == 0) continue;
        m.paste(t.structure(n + g.shift, x, y) * g.at(p, n, static_cast<int>(cols[c])), 0, c);
    }
    return m;
}

inline ChainMap materialize_map(const ProjCx& p, const Cx& src, const Cx& t, const GenVectors& g) {
    return ChainMap(src, t, [&](int n, int y) {
        if (n < p.lo || n > p.hi()) return Mat::zero(t.dim(n, y), src.dim(n, y));
        return generator_component(p, t, g, n, y);
    });
}

/// Post-composition of generator images with a chain map T -> T'.
inline GenVectors postcompose(const ChainMap& f, const ProjCx& p, const GenVectors& g) {
    GenVectors out{g.shift, {}};
    for (int n = p.lo; n <= p.hi(); ++n) {
        std::vector<Mat> row;
        for (int j = 0; j < p.count(n); ++j) row.push_back(f.at(n + g.shift, p.elem(n, j)) * g.at(p, n, j));
        out.v.push_back(std::move(row));
    }
    return out;
}

struct Resolution {
    ProjCx P;
    Cx materialized;
    GenVectors w;  ///< generator images of the quasi-isomorphism P -> X
    ChainMap map;  ///< materialized P -> X
    bool fast_path = false;
};

namespace detail {

/// If every term of X is projective, a generator basis for each term together with the
/// coefficient matrices of d; otherwise nullopt.
inline std::optional<std::pair<ProjCx, GenVectors>> decompose_projective(const Cx& x) {
    const Poset& po = *x.poset();
    ProjCx p{x.poset(), x.lo(), {}, {}};
    GenVectors w{0, {}};
    for (int n = x.lo(); n <= x.hi(); ++n) {
        std::vector<int> gens;
        std::vector<Mat> vs;
        for (int e : po.linear_order()) {
            const int d = x.dim(n, e);
            Mat img(d, 0);
            for (int j = 0; j < static_cast<int>(gens.size()); ++j)
                if (po.lt(gens[j], e)) img = hstack(img, x.structure(n, gens[j], e) * vs[j]);
            if (static_cast<int>(rank(img)) != static_cast<int>(img.cols())) return std::nullopt;
            const Mat id = Mat::identity(d);
            for (auto c : complement_columns(img, id)) {
                gens.push_back(e);
                vs.push_back(id.select_columns({c}));
            }
        }
        // Free on these generators iff the generated vectors form a basis everywhere.
        for (int y = 0; y < po.size(); ++y) {
            int c = 0;
            for (int g : gens) c += po.leq(g, y);
            if (c != x.dim(n, y)) return std::nullopt;
        }
        p.gens.push_back(std::move(gens));
        w.v.push_back(std::move(vs));
    }
    for (int n = x.lo(); n <= x.hi(); ++n) {
        Mat dm(p.count(n - 1), p.count(n));
        for (int j = 0; j < p.count(n); ++j) {
            if (n == x.lo()) break;
            const int xj = p.elem(n, j);
            const auto rows = basis_at(p, n - 1, xj);
            Mat b(x.dim(n - 1, xj), 0);
            for (auto i : rows) b = hstack(b, x.structure(n - 1, p.elem(n - 1, static_cast<int>(i)), xj) * w.at(p, n - 1, static_cast<int>(i)));
            const auto c = solve(b, x.d(n, xj) * w.at(p, n, j));
            if (!c) throw std::logic_error("decompose_projective: differential outside the generated span");
            for (std::size_t r = 0; r < rows.size(); ++r) dm(rows[r], j) = (*c)(r, 0);
        }
        p.D.push_back(std::move(dm));
    }
    return std::make_pair(std::move(p), std::move(w));
}

/// Normalized bar resolution of each term, totalized:
/// P_m = (+)_{n+k=m} B_k(X_n), B_k(M) = (+)_{x0<...<xk} P_{xk} (x) M(x0).
inline std::pair<ProjCx, GenVectors> bar_resolution(const Cx& x) {
    const Poset& po = *x.poset();
    const auto all_chains = chains(po, po.all());
    std::map<Chain, int> chain_id;
    for (std::size_t i = 0; i < all_chains.size(); ++i) chain_id[all_chains[i]] = static_cast<int>(i);
    const int kmax = height(po);

    struct Gen {
        int n, k, chain, v;
    };
    const int lo = x.lo(), hi = x.hi() + kmax;
    std::vector<std::vector<Gen>> gl(hi - lo + 1);
    std::map<std::tuple<int, int, int>, int> first;  // (n, chain, v=0) -> index in degree n+k
    for (int m = lo; m <= hi; ++m)
        for (int k = 0; k <= kmax; ++k) {
            const int n = m - k;
            if (!x.in_range(n)) continue;
            for (std::size_t c = 0; c < all_chains.size(); ++c) {
                const Chain& s = all_chains[c];
                if (static_cast<int>(s.size()) != k + 1) continue;
                const int d = x.dim(n, s.front());
                if (d == 0) continue;
                first[{n, static_cast<int>(c), 0}] = static_cast<int>(gl[m - lo].size());
                for (int v = 0; v < d; ++v) gl[m - lo].push_back({n, k, static_cast<int>(c), v});
            }
        }
    auto index_of = [&](int n, const Chain& s, int v) { return first.at({n, chain_id.at(s), 0}) + v; };

    ProjCx p{x.poset(), lo, {}, {}};
    GenVectors w{0, {}};
    for (int m = lo; m <= hi; ++m) {
        std::vector<int> g;
        std::vector<Mat> ws;
        for (const auto& gen : gl[m - lo]) {
            const Chain& s = all_chains[gen.chain];
            g.push_back(s.back());
            Mat col(x.dim(m, s.back()), 1);
            if (gen.k == 0) col(gen.v, 0) = 1;
            ws.push_back(std::move(col));
        }
        p.gens.push_back(std::move(g));
        w.v.push_back(std::move(ws));
    }
    for (int m = lo; m <= hi; ++m) {
        const auto& cols = gl[m - lo];
        Mat dm(m == lo ? 0 : gl[m - 1 - lo].size(), cols.size());
        if (m > lo)
            for (std::size_t j = 0; j < cols.size(); ++j) {
                const auto [n, k, ci, v] = cols[j];
                const Chain& s = all_chains[ci];
                auto bump = [&](int row, Elem c) { dm(row, j) = gf::add(dm(row, j), c); };
                if (k >= 1) {
                    const Chain tail(s.begin() + 1, s.end());
                    const Mat& a = x.structure(n, s[0], s[1]);
                    for (int r = 0; r < x.dim(n, s[1]); ++r)
                        if (a(r, v)) bump(index_of(n, tail, r), a(r, v));
                    for (int i = 1; i <= k; ++i) {
                        Chain face = s;
                        face.erase(face.begin() + i);
                        bump(index_of(n, face, v), gf::sign(i));
                    }
                }
                if (x.in_range(n - 1)) {
                    const Mat dx = x.d(n, s.front());
                    const Elem sg = gf::sign(k);
                    for (int r = 0; r < x.dim(n - 1, s.front()); ++r)
                        if (dx(r, v)) bump(index_of(n - 1, s, r), gf::mul(sg, dx(r, v)));
                }
            }
        p.D.push_back(std::move(dm));
    }
    return {std::move(p), std::move(w)};
}

}  // namespace detail

/// Degreewise projective complex P with a quasi-isomorphism P -> X. A complex that is
/// already degreewise projective is only re-expressed in generators; then the map is an
/// isomorphism.
inline Resolution cofibrant_replace(const Cx& x, bool allow_fast_path = true) {
    Resolution r;
    if (x.is_zero()) {
        r.P = ProjCx{x.poset(), 0, {}, {}};
        r.materialized = Cx::zero(x.poset());
        r.map = zero_map(r.materialized, x);
        r.fast_path = true;
        return r;
    }
    std::optional<std::pair<ProjCx, GenVectors>> fp;
    if (allow_fast_path) fp = detail::decompose_projective(x);
    r.fast_path = fp.has_value();
    auto [p, w] = fp ? std::move(*fp) : detail::bar_resolution(x);
    r.P = std::move(p);
    r.w = std::move(w);
    r.materialized = materialize(r.P);
    r.map = materialize_map(r.P, r.materialized, x, r.w);
    return r;
}

namespace detail {

struct Layout {
    std::vector<std::vector<std::size_t>> offset;  // offset[n - P.lo][j]
    std::size_t size = 0;
};

inline Layout layout(const ProjCx& p, const Cx& t, int shift) {
    Layout l;
    for (int n = p.lo; n <= p.hi(); ++n) {
        std::vector<std::size_t> row;
        for (int j = 0; j < p.count(n); ++j) {
            row.push_back(l.size);
            l.size += static_cast<std::size_t>(t.dim(n + shift, p.elem(n, j)));
        }
        l.offset.push_back(std::move(row));
    }
    return l;
}

/// The operator h |-> d_T h + eps * h D on generator families, from shift s to shift s-1.
inline Mat hom_operator(const ProjCx& p, const Cx& t, int s, Elem eps) {
    const Layout in = layout(p, t, s), out = layout(p, t, s - 1);
    Mat a(out.size, in.size);
    for (int n = p.lo; n <= p.hi(); ++n) {
        const Mat dn = p.diff(n);
        for (int j = 0; j < p.count(n); ++j) {
            const int xj = p.elem(n, j);
            const std::size_t ro = out.offset[n - p.lo][j];
            if (t.dim(n + s - 1, xj) == 0) continue;
            if (t.dim(n + s, xj)) a.paste(t.d(n + s, xj), ro, in.offset[n - p.lo][j]);
            if (n - 1 < p.lo) continue;
            for (int i = 0; i < p.count(n - 1); ++i) {
                const Elem c = dn(i, j);
                const int xi = p.elem(n - 1, i);
                if (!c || t.dim(n + s - 1, xi) == 0) continue;
                const Mat blk = t.structure(n + s - 1, xi, xj).scaled(gf::mul(c, eps));
                const std::size_t co = in.offset[n - 1 - p.lo][i];
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t q = 0; q < blk.cols(); ++q) a(ro + r, co + q) = gf::add(a(ro + r, co + q), blk(r, q));
            }
        }
    }
    return a;
}

inline Mat flatten(const ProjCx& p, const Cx& t, const GenVectors& g) {
    const Layout l = layout(p, t, g.shift);
    Mat v(l.size, 1);
    for (int n = p.lo; n <= p.hi(); ++n)
        for (int j = 0; j < p.count(n); ++j) v.paste(g.at(p, n, j), l.offset[n - p.lo][j], 0);
    return v;
}

inline GenVectors unflatten(const ProjCx& p, const Cx& t, int shift, const Mat& v) {
    const Layout l = layout(p, t, shift);
    GenVectors g{shift, {}};
    for (int n = p.lo; n <= p.hi(); ++n) {
        std::vector<Mat> row;
        for (int j = 0; j < p.count(n); ++j)
            row.push_back(v.block(l.offset[n - p.lo][j], 0, static_cast<std::size_t>(t.dim(n + shift, p.elem(n, j))), 1));
        g.v.push_back(std::move(row));
    }
    return g;
}

}  // namespace detail

/// dim of the space of chain maps P -> Y modulo chain homotopy, P a cofibrant model of X:
/// the dimension of Hom(X, Y) in the derived category.
inline int derived_hom_h0(const Cx& x, const Cx& y, bool allow_fast_path = true) {
    if (!same_poset(x.poset(), y.poset())) throw InputError("derived_hom_h0: complexes over different posets");
    if (x.is_zero() || y.is_zero()) return 0;
    const auto r = cofibrant_replace(x, allow_fast_path);
    const Mat cyc = detail::hom_operator(r.P, y, 0, gf::neg(1));
    const Mat bnd = detail::hom_operator(r.P, y, 1, 1);
    return static_cast<int>(cyc.cols()) - static_cast<int>(rank(cyc)) - static_cast<int>(rank(bnd));
}

/// Some h with  phi = d_T h + h D  (a null-homotopy of the map given by phi), if one exists.
inline std::optional<GenVectors> find_nullhomotopy(const ProjCx& p, const Cx& t, const GenVectors& phi) {
    const Mat bnd = detail::hom_operator(p, t, 1, 1);
    const auto sol = solve(bnd, detail::flatten(p, t, phi));
    if (!sol) return std::nullopt;
    return detail::unflatten(p, t, 1, *sol);
}

/// Materialized P -> fib(g) given by (a, h), where a : P -> X has generator images `a`
/// and h null-homotopes g a. Returns nullopt when g a is not null-homotopic.
inline std::optional<ChainMap> lift_into_fiber(const Resolution& r, const GenVectors& a, const ChainMap& g) {
    const Cx& src = r.materialized;
    const GenVectors ga = postcompose(g, r.P, a);
    const auto h = find_nullhomotopy(r.P, g.target(), ga);
    if (!h) return std::nullopt;
    const Cx fb = fib(g).fiber;
    return ChainMap(src, fb, [&](int n, int y) {
        if (n < r.P.lo || n > r.P.hi()) return Mat::zero(fb.dim(n, y), src.dim(n, y));
        return vstack(generator_component(r.P, g.source(), a, n, y), generator_component(r.P, g.target(), *h, n, y));
    });
}

}  // namespace pglue
