#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rep.hpp"

namespace pglue {

/// A bounded complex of poset representations, homologically indexed:
/// d_n : X_n -> X_{n-1}. Terms outside [lo, hi] are zero.
class Cx {
public:
    Cx() = default;

    /// `diffs[i]` holds, per element, the matrix of d_{lo+i} : X_{lo+i} -> X_{lo+i-1}.
    /// The first entry maps into the zero term and must have zero rows.
    Cx(PosetPtr poset, int lo, std::vector<Rep> terms, std::vector<std::vector<Mat>> diffs)
        : poset_(std::move(poset)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
        zero_ = Rep::zero(poset_);
        if (auto e = validate()) throw InputError(*e);
    }

    /// Same as the constructor but reports the first violated equation instead of throwing.
    static std::pair<std::optional<Cx>, std::string> make(PosetPtr poset, int lo, std::vector<Rep> terms,
                                                          std::vector<std::vector<Mat>> diffs) {
        Cx c;
        c.poset_ = std::move(poset);
        c.lo_ = lo;
        c.terms_ = std::move(terms);
        c.diffs_ = std::move(diffs);
        c.zero_ = Rep::zero(c.poset_);
        if (auto e = c.validate()) return {std::nullopt, *e};
        return {std::move(c), {}};
    }

    static Cx zero(const PosetPtr& p) { return Cx(p, 0, {}, {}); }

    /// M placed in a single degree.
    static Cx concentrated(const Rep& m, int degree) {
        std::vector<Mat> d;
        for (int x = 0; x < m.poset()->size(); ++x) d.push_back(Mat::zero(0, m.dim(x)));
        return Cx(m.poset(), degree, {m}, {d});
    }

    [[nodiscard]] const PosetPtr& poset() const { return poset_; }
    [[nodiscard]] int lo() const { return lo_; }
    [[nodiscard]] int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
    [[nodiscard]] bool in_range(int n) const { return n >= lo_ && n <= hi(); }

    [[nodiscard]] const Rep& term(int n) const { return in_range(n) ? terms_[n - lo_] : zero_; }
    [[nodiscard]] int dim(int n, int x) const { return in_range(n) ? terms_[n - lo_].dim(x) : 0; }

    /// d_n at element x, shape dim(n-1,x) x dim(n,x).
    [[nodiscard]] Mat d(int n, int x) const {
        if (!in_range(n) || !in_range(n - 1)) return Mat::zero(dim(n - 1, x), dim(n, x));
        return diffs_[n - lo_][x];
    }
    [[nodiscard]] RepMap d(int n) const {
        std::vector<Mat> c;
        for (int x = 0; x < poset_->size(); ++x) c.push_back(d(n, x));
        return RepMap{term(n), term(n - 1), std::move(c)};
    }

    [[nodiscard]] Mat structure(int n, int x, int y) const {
        return in_range(n) ? terms_[n - lo_].map(x, y) : Mat::zero(0, 0);  // both sides are zero-dimensional
    }

    [[nodiscard]] int total_dim() const {
        int s = 0;
        for (const auto& t : terms_) s += t.total_dim();
        return s;
    }
    [[nodiscard]] bool is_zero() const { return total_dim() == 0; }

    /// Drops zero terms at both ends.
    [[nodiscard]] Cx trimmed() const {
        int a = lo_, b = hi();
        while (a <= b && term(a).is_zero()) ++a;
        while (b >= a && term(b).is_zero()) --b;
        if (a > b) return zero(poset_);
        std::vector<Rep> t;
        std::vector<std::vector<Mat>> dd;
        for (int n = a; n <= b; ++n) {
            t.push_back(term(n));
            if (n == a) {
                std::vector<Mat> z;
                for (int x = 0; x < poset_->size(); ++x) z.push_back(Mat::zero(0, dim(n, x)));
                dd.push_back(std::move(z));
            } else {
                dd.push_back(diffs_[n - lo_]);
            }
        }
        return Cx(poset_, a, std::move(t), std::move(dd));
    }

    /// Data equality after trimming zero ends.
    friend bool operator==(const Cx& a, const Cx& b) {
        if (!same_poset(a.poset_, b.poset_)) return false;
        const Cx ta = a.trimmed(), tb = b.trimmed();
        if (ta.terms_.size() != tb.terms_.size()) return false;
        if (ta.terms_.empty()) return true;
        if (ta.lo_ != tb.lo_) return false;
        for (int n = ta.lo(); n <= ta.hi(); ++n) {
            if (!(ta.term(n) == tb.term(n))) return false;
            for (int x = 0; x < ta.poset_->size(); ++x)
                if (!(ta.d(n, x) == tb.d(n, x))) return false;
        }
        return true;
    }

private:
    std::optional<std::string> validate() const {
        const Poset& p = *poset_;
        if (terms_.size() != diffs_.size()) return "one differential per degree required";
        for (int n = lo_; n <= hi(); ++n) {
            const Rep& t = terms_[n - lo_];
            if (!same_poset(t.poset(), poset_)) return "degree " + std::to_string(n) + ": term over a different poset";
            if (static_cast<int>(diffs_[n - lo_].size()) != p.size())
                return "degree " + std::to_string(n) + ": one differential matrix per element required";
            for (int x = 0; x < p.size(); ++x) {
                const Mat& m = diffs_[n - lo_][x];
                if (m.rows() != static_cast<std::size_t>(dim(n - 1, x)) || m.cols() != static_cast<std::size_t>(t.dim(x)))
                    return "degree " + std::to_string(n) + ", element " + p.name_of(x) + ": differential has shape " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                           std::to_string(dim(n - 1, x)) + "x" + std::to_string(t.dim(x));
            }
            for (std::size_t k = 0; k < p.covers().size(); ++k) {
                auto [a, b] = p.covers()[k];
                if (!(term(n - 1).cover_map(k) * d(n, a) == d(n, b) * t.cover_map(k)))
                    return "degree " + std::to_string(n) + ", cover " + p.name_of(a) + "<" + p.name_of(b) +
                           ": differential is not natural";
            }
            for (int x = 0; x < p.size(); ++x)
                if (!(d(n - 1, x) * d(n, x)).is_zero())
                    return "degree " + std::to_string(n) + ", element " + p.name_of(x) + ": d_" +
                           std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0";
        }
        return std::nullopt;
    }

    PosetPtr poset_;
    int lo_ = 0;
    std::vector<Rep> terms_;
    std::vector<std::vector<Mat>> diffs_;
    Rep zero_;
};

/// Builds a complex from per-degree, per-element callbacks over [lo, hi].
/// `dims(n, x)`, `cover(n, k)` (matrix of the k-th cover), `diff(n, x)`.
inline Cx assemble(const PosetPtr& p, int lo, int hi, const std::function<int(int, int)>& dims,
                   const std::function<Mat(int, int)>& cover, const std::function<Mat(int, int)>& diff) {
    if (hi < lo) return Cx::zero(p);
    std::vector<Rep> terms;
    std::vector<std::vector<Mat>> diffs;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> dv(p->size());
        for (int x = 0; x < p->size(); ++x) dv[x] = dims(n, x);
        std::vector<Mat> cm;
        for (std::size_t k = 0; k < p->covers().size(); ++k) cm.push_back(cover(n, static_cast<int>(k)));
        terms.emplace_back(p, dv, cm);
        std::vector<Mat> dd;
        for (int x = 0; x < p->size(); ++x)
            dd.push_back(n == lo ? Mat::zero(0, dv[x]) : diff(n, x));
        diffs.push_back(std::move(dd));
    }
    return Cx(p, lo, std::move(terms), std::move(diffs));
}

/// A chain map. Components are stored over the union of the degree ranges.
class ChainMap {
public:
    ChainMap() = default;

    ChainMap(Cx source, Cx target, const std::function<Mat(int, int)>& comp)
        : source_(std::move(source)), target_(std::move(target)) {
        lo_ = std::min(source_.lo(), target_.lo());
        const int hi = std::max(source_.hi(), target_.hi());
        for (int n = lo_; n <= hi; ++n) {
            std::vector<Mat> c;
            for (int x = 0; x < source_.poset()->size(); ++x) {
                if (source_.dim(n, x) == 0 || target_.dim(n, x) == 0)
                    c.push_back(Mat::zero(target_.dim(n, x), source_.dim(n, x)));
                else
                    c.push_back(comp(n, x));
            }
            comps_.push_back(std::move(c));
        }
        if (auto e = validate()) throw InputError(*e);
    }

    static std::pair<std::optional<ChainMap>, std::string> make(Cx source, Cx target,
                                                                const std::function<Mat(int, int)>& comp) {
        try {
            return {ChainMap(std::move(source), std::move(target), comp), {}};
        } catch (const InputError& e) {
            return {std::nullopt, e.what()};
        }
    }

    [[nodiscard]] const Cx& source() const { return source_; }
    [[nodiscard]] const Cx& target() const { return target_; }
    [[nodiscard]] const PosetPtr& poset() const { return source_.poset(); }

    [[nodiscard]] Mat at(int n, int x) const {
        const int i = n - lo_;
        if (i < 0 || i >= static_cast<int>(comps_.size())) return Mat::zero(target_.dim(n, x), source_.dim(n, x));
        return comps_[i][x];
    }
    [[nodiscard]] RepMap at(int n) const {
        std::vector<Mat> c;
        for (int x = 0; x < poset()->size(); ++x) c.push_back(at(n, x));
        return RepMap{source_.term(n), target_.term(n), std::move(c)};
    }

    [[nodiscard]] int lo() const { return std::min(source_.lo(), target_.lo()); }
    [[nodiscard]] int hi() const { return std::max(source_.hi(), target_.hi()); }

    [[nodiscard]] bool is_zero() const {
        for (const auto& v : comps_)
            for (const auto& m : v)
                if (!m.is_zero()) return false;
        return true;
    }

    friend bool operator==(const ChainMap& a, const ChainMap& b) {
        if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
        const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
        for (int n = lo; n <= hi; ++n)
            for (int x = 0; x < a.poset()->size(); ++x)
                if (!(a.at(n, x) == b.at(n, x))) return false;
        return true;
    }

private:
    std::optional<std::string> validate() const {
        if (!same_poset(source_.poset(), target_.poset())) return "chain map between complexes over different posets";
        const Poset& p = *poset();
        for (int n = lo(); n <= hi(); ++n) {
            for (int x = 0; x < p.size(); ++x) {
                const Mat f = at(n, x);
                if (f.rows() != static_cast<std::size_t>(target_.dim(n, x)) ||
                    f.cols() != static_cast<std::size_t>(source_.dim(n, x)))
                    return "degree " + std::to_string(n) + ", element " + p.name_of(x) + ": component has wrong shape";
                if (!(target_.d(n, x) * f == at(n - 1, x) * source_.d(n, x)))
                    return "degree " + std::to_string(n) + ", element " + p.name_of(x) +
                           ": chain map does not commute with the differential";
            }
            for (std::size_t k = 0; k < p.covers().size(); ++k) {
                auto [a, b] = p.covers()[k];
                if (source_.dim(n, a) + source_.dim(n, b) == 0) continue;
                if (!(target_.term(n).cover_map(k) * at(n, a) == at(n, b) * source_.term(n).cover_map(k)))
                    return "degree " + std::to_string(n) + ", cover " + p.name_of(a) + "<" + p.name_of(b) +
                           ": chain map is not natural";
            }
        }
        return std::nullopt;
    }

    Cx source_;
    Cx target_;
    int lo_ = 0;
    std::vector<std::vector<Mat>> comps_;
};

inline ChainMap identity(const Cx& x) {
    return ChainMap(x, x, [&](int n, int e) { return Mat::identity(x.dim(n, e)); });
}

inline ChainMap zero_map(const Cx& s, const Cx& t) {
    return ChainMap(s, t, [&](int n, int e) { return Mat::zero(t.dim(n, e), s.dim(n, e)); });
}

/// g o f.
inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target() == g.source())) throw InputError("compose: target of f differs from source of g");
    return ChainMap(f.source(), g.target(), [&](int n, int x) { return g.at(n, x) * f.at(n, x); });
}

inline ChainMap add(const ChainMap& f, const ChainMap& g) {
    return ChainMap(f.source(), f.target(), [&](int n, int x) { return f.at(n, x) + g.at(n, x); });
}

inline ChainMap scale(const ChainMap& f, Elem s) {
    return ChainMap(f.source(), f.target(), [&](int n, int x) { return f.at(n, x).scaled(s); });
}

/// (X[k])_n = X_{n-k}, differential multiplied by (-1)^k.
inline Cx shift(const Cx& x, int k) {
    if (x.hi() < x.lo()) return x;
    const Elem s = gf::sign(k);
    return assemble(
        x.poset(), x.lo() + k, x.hi() + k, [&](int n, int e) { return x.dim(n - k, e); },
        [&](int n, int c) { return x.term(n - k).cover_map(c); }, [&](int n, int e) { return x.d(n - k, e).scaled(s); });
}

inline ChainMap shift(const ChainMap& f, int k) {
    return ChainMap(shift(f.source(), k), shift(f.target(), k), [&](int n, int x) { return f.at(n - k, x); });
}

inline Cx direct_sum(const Cx& a, const Cx& b) {
    if (!same_poset(a.poset(), b.poset())) throw InputError("direct_sum: different posets");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    return assemble(
        a.poset(), lo, hi, [&](int n, int x) { return a.dim(n, x) + b.dim(n, x); },
        [&](int n, int k) {
            auto cm = [&](const Cx& c) {
                auto [u, v] = c.poset()->covers()[k];
                return c.in_range(n) ? c.term(n).cover_map(k) : Mat::zero(c.dim(n, v), c.dim(n, u));
            };
            return block_diag(cm(a), cm(b));
        },
        [&](int n, int x) { return block_diag(a.d(n, x), b.d(n, x)); });
}

inline ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    return ChainMap(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                    [&](int n, int x) { return block_diag(f.at(n, x), g.at(n, x)); });
}

/// Inclusion of the first or second summand of a (+) b.
inline ChainMap summand_inclusion(const Cx& a, const Cx& b, bool second) {
    const Cx s = direct_sum(a, b);
    const Cx& part = second ? b : a;
    return ChainMap(part, s, [&](int n, int x) {
        Mat m(s.dim(n, x), part.dim(n, x));
        m.paste(Mat::identity(part.dim(n, x)), second ? a.dim(n, x) : 0, 0);
        return m;
    });
}

namespace detail {
inline Mat cover_or_zero(const Cx& c, int n, int k) {
    auto [u, v] = c.poset()->covers()[k];
    return c.in_range(n) ? c.term(n).cover_map(k) : Mat::zero(c.dim(n, v), c.dim(n, u));
}
}  // namespace detail

struct ConeResult {
    Cx cone;
    ChainMap inclusion;   ///< target -> cone
    ChainMap projection;  ///< cone -> source[1]
};

/// cone(f)_n = X_{n-1} (+) Y_n with differential [[-d_X, 0], [-f, d_Y]].
inline ConeResult cone(const ChainMap& f) {
    const Cx& x = f.source();
    const Cx& y = f.target();
    const PosetPtr& p = f.poset();
    const int lo = std::min(x.lo() + 1, y.lo()), hi = std::max(x.hi() + 1, y.hi());
    Cx c = assemble(
        p, lo, hi, [&](int n, int e) { return x.dim(n - 1, e) + y.dim(n, e); },
        [&](int n, int k) { return block_diag(detail::cover_or_zero(x, n - 1, k), detail::cover_or_zero(y, n, k)); },
        [&](int n, int e) { return block2x2(-x.d(n - 1, e), Mat::zero(x.dim(n - 2, e), y.dim(n, e)), -f.at(n - 1, e), y.d(n, e)); });
    ChainMap incl(y, c, [&](int n, int e) { return vstack(Mat::zero(x.dim(n - 1, e), y.dim(n, e)), Mat::identity(y.dim(n, e))); });
    Cx xs = shift(x, 1);
    ChainMap proj(c, xs, [&](int n, int e) { return hstack(Mat::identity(x.dim(n - 1, e)), Mat::zero(x.dim(n - 1, e), y.dim(n, e))); });
    return {std::move(c), std::move(incl), std::move(proj)};
}

struct FiberResult {
    Cx fiber;
    ChainMap projection;  ///< fiber -> source
};

/// fib(f) = cone(f)[-1]: fib_n = X_n (+) Y_{n+1}, differential [[d_X, 0], [f, -d_Y]].
/// With `drop_sign` the -d_Y entry loses its sign; this is a deliberate defect used only
/// for mutation testing and produces d^2 != 0 whenever f is nonzero.
inline FiberResult fib(const ChainMap& f, bool drop_sign = false) {
    const Cx& x = f.source();
    const Cx& y = f.target();
    const PosetPtr& p = f.poset();
    const int lo = std::min(x.lo(), y.lo() - 1), hi = std::max(x.hi(), y.hi() - 1);
    const Elem ys = drop_sign ? 1 : gf::neg(1);
    Cx fb = assemble(
        p, lo, hi, [&](int n, int e) { return x.dim(n, e) + y.dim(n + 1, e); },
        [&](int n, int k) { return block_diag(detail::cover_or_zero(x, n, k), detail::cover_or_zero(y, n + 1, k)); },
        [&](int n, int e) { return block2x2(x.d(n, e), Mat::zero(x.dim(n - 1, e), y.dim(n + 1, e)), f.at(n, e), y.d(n + 1, e).scaled(ys)); });
    ChainMap proj(fb, x, [&](int n, int e) { return hstack(Mat::identity(x.dim(n, e)), Mat::zero(x.dim(n, e), y.dim(n + 1, e))); });
    return {std::move(fb), std::move(proj)};
}

/// Map of cones induced by a strictly commuting square  g' u = v g  (g : A -> B, g' : A' -> B').
inline ChainMap cone_map(const ChainMap& g, const ChainMap& g2, const ChainMap& u, const ChainMap& v) {
    const Cx c1 = cone(g).cone, c2 = cone(g2).cone;
    return ChainMap(c1, c2, [&](int n, int e) { return block_diag(u.at(n - 1, e), v.at(n, e)); });
}

/// Map of fibers induced by a strictly commuting square  g' u = v g.
inline ChainMap fib_map(const ChainMap& g, const ChainMap& g2, const ChainMap& u, const ChainMap& v, bool drop_sign = false) {
    const Cx f1 = fib(g, drop_sign).fiber, f2 = fib(g2, drop_sign).fiber;
    return ChainMap(f1, f2, [&](int n, int e) { return block_diag(u.at(n, e), v.at(n + 1, e)); });
}

/// Given a : A -> B with g a = 0 for g : B -> C, the induced map A -> fib(g), a (+) 0.
inline ChainMap into_fiber(const ChainMap& a, const ChainMap& g) {
    const Cx fb = fib(g).fiber;
    const Cx& c = g.target();
    return ChainMap(a.source(), fb, [&](int n, int e) { return vstack(a.at(n, e), Mat::zero(c.dim(n + 1, e), a.source().dim(n, e))); });
}

/// dim H_n(X)(x) = nullity(d_n) - rank(d_{n+1}).
inline int homology_dim(const Cx& x, int n, int e) {
    const int dn = x.dim(n, e);
    if (dn == 0) return 0;
    return dn - static_cast<int>(rank(x.d(n, e))) - static_cast<int>(rank(x.d(n + 1, e)));
}

/// Homology dimension table over [lo, hi] of the complex: result[n - lo][x].
struct HomologyDims {
    int lo = 0;
    std::vector<std::vector<int>> dims;

    [[nodiscard]] int at(int n, int x) const {
        const int i = n - lo;
        return (i < 0 || i >= static_cast<int>(dims.size())) ? 0 : dims[i][x];
    }
    [[nodiscard]] bool all_zero() const {
        for (const auto& v : dims)
            for (int d : v)
                if (d) return false;
        return true;
    }
    /// Lowest and highest degrees with nonzero homology at some element.
    [[nodiscard]] std::optional<std::pair<int, int>> support() const {
        std::optional<std::pair<int, int>> s;
        for (std::size_t i = 0; i < dims.size(); ++i)
            for (int d : dims[i])
                if (d) {
                    const int n = lo + static_cast<int>(i);
                    if (!s) s = {n, n};
                    s->first = std::min(s->first, n);
                    s->second = std::max(s->second, n);
                }
        return s;
    }
    friend bool operator==(const HomologyDims& a, const HomologyDims& b) {
        const auto sa = a.support(), sb = b.support();
        if (!sa || !sb) return !sa && !sb;
        if (*sa != *sb) return false;
        for (int n = sa->first; n <= sa->second; ++n)
            if (a.dims[n - a.lo] != b.dims[n - b.lo]) return false;
        return true;
    }
};

inline HomologyDims homology_dims(const Cx& x) {
    HomologyDims h;
    h.lo = x.lo();
    for (int n = x.lo(); n <= x.hi(); ++n) {
        std::vector<int> row;
        for (int e = 0; e < x.poset()->size(); ++e) row.push_back(homology_dim(x, n, e));
        h.dims.push_back(std::move(row));
    }
    return h;
}

inline bool is_acyclic(const Cx& x) {
    for (int n = x.lo(); n <= x.hi(); ++n)
        for (int e = 0; e < x.poset()->size(); ++e)
            if (homology_dim(x, n, e) != 0) return false;
    return true;
}

/// Quasi-isomorphism test: the cone has no homology anywhere.
inline bool is_qiso(const ChainMap& f) { return is_acyclic(cone(f).cone); }

/// H_n(X) as a representation, with structure maps induced on chosen complements of
/// the boundaries inside the cycles.
inline Rep homology(const Cx& x, int n) {
    const Poset& p = *x.poset();
    std::vector<Mat> bnd, reps;
    std::vector<int> dims;
    for (int e = 0; e < p.size(); ++e) {
        Mat z = kernel_basis(x.d(n, e));
        Mat b = x.d(n + 1, e);
        auto idx = complement_columns(b, z);
        reps.push_back(z.select_columns(idx));
        bnd.push_back(std::move(b));
        dims.push_back(static_cast<int>(idx.size()));
    }
    std::vector<Mat> maps;
    for (std::size_t k = 0; k < p.covers().size(); ++k) {
        auto [a, b] = p.covers()[k];
        Mat v = x.term(n).cover_map(k) * reps[a];
        auto c = solve(hstack(bnd[b], reps[b]), v);
        if (!c) throw std::logic_error("homology: cycle not mapped to a cycle");
        maps.push_back(c->block(bnd[b].cols(), 0, dims[b], dims[a]));
    }
    return Rep(x.poset(), dims, maps);
}

struct TruncationGe {
    Cx truncation;
    ChainMap inclusion;  ///< T -> X
};

/// Smart truncation keeping homology in degrees >= n: ... X_{n+1} -> ker d_n -> 0.
inline TruncationGe truncate_ge(const Cx& x, int n) {
    const PosetPtr& p = x.poset();
    if (n > x.hi()) {
        Cx z = Cx::zero(p);
        return {z, zero_map(z, x)};
    }
    if (n <= x.lo()) return {x, identity(x)};
    const auto kr = rep_kernel(x.d(n));
    Cx t = assemble(
        p, n, x.hi(), [&](int m, int e) { return m == n ? kr.kernel.dim(e) : x.dim(m, e); },
        [&](int m, int k) { return m == n ? kr.kernel.cover_map(k) : x.term(m).cover_map(k); },
        [&](int m, int e) {
            if (m == n + 1) return *solve(kr.inclusion.at(e), x.d(m, e));
            return x.d(m, e);
        });
    ChainMap incl(t, x, [&](int m, int e) { return m == n ? kr.inclusion.at(e) : Mat::identity(x.dim(m, e)); });
    return {std::move(t), std::move(incl)};
}

struct TruncationLt {
    ChainMap projection;  ///< X -> R
    Cx truncation;
};

/// Smart truncation keeping homology in degrees < n: 0 -> coker d_n -> X_{n-2} -> ...
inline TruncationLt truncate_lt(const Cx& x, int n) {
    const PosetPtr& p = x.poset();
    if (n - 1 < x.lo()) {
        Cx z = Cx::zero(p);
        return {zero_map(x, z), z};
    }
    if (n - 1 >= x.hi()) return {identity(x), x};
    const auto ck = rep_cokernel(x.d(n));
    Cx r = assemble(
        p, x.lo(), n - 1, [&](int m, int e) { return m == n - 1 ? ck.cokernel.dim(e) : x.dim(m, e); },
        [&](int m, int k) { return m == n - 1 ? ck.cokernel.cover_map(k) : x.term(m).cover_map(k); },
        [&](int m, int e) {
            if (m == n - 1) return *solve_left(ck.projection.at(e), x.d(m, e));
            return x.d(m, e);
        });
    ChainMap proj(x, r, [&](int m, int e) { return m == n - 1 ? ck.projection.at(e) : Mat::identity(x.dim(m, e)); });
    return {std::move(proj), std::move(r)};
}

/// truncate_ge applied to a chain map.
inline ChainMap truncate_ge_map(const ChainMap& f, int n) {
    const auto a = truncate_ge(f.source(), n), b = truncate_ge(f.target(), n);
    return ChainMap(a.truncation, b.truncation, [&](int m, int e) {
        if (m == n) {
            auto c = solve(b.inclusion.at(n, e), f.at(n, e) * a.inclusion.at(n, e));
            if (!c) throw std::logic_error("truncate_ge_map: cycles not preserved");
            return *c;
        }
        return f.at(m, e);
    });
}

/// truncate_lt applied to a chain map.
inline ChainMap truncate_lt_map(const ChainMap& f, int n) {
    const auto a = truncate_lt(f.source(), n), b = truncate_lt(f.target(), n);
    return ChainMap(a.truncation, b.truncation, [&](int m, int e) {
        if (m == n - 1) {
            auto c = solve_left(a.projection.at(m, e), b.projection.at(m, e) * f.at(m, e));
            if (!c) throw std::logic_error("truncate_lt_map: boundaries not preserved");
            return *c;
        }
        return f.at(m, e);
    });
}

/// Restriction of X to an induced subposet `sub` of X's poset.
inline Cx restrict_to(const Cx& x, const PosetPtr& sub) {
    const auto& par = sub->to_parent();
    if (static_cast<int>(par.size()) != sub->size()) throw InputError("restrict_to: target is not an induced subposet");
    for (int i = 0; i < sub->size(); ++i)
        if (x.poset()->name_of(par[i]) != sub->name_of(i)) throw InputError("restrict_to: subposet of a different poset");
    return assemble(
        sub, x.lo(), x.hi(), [&](int n, int e) { return x.dim(n, par[e]); },
        [&](int n, int k) {
            auto [a, b] = sub->covers()[k];
            return x.structure(n, par[a], par[b]);
        },
        [&](int n, int e) { return x.d(n, par[e]); });
}

inline ChainMap restrict_to(const ChainMap& f, const PosetPtr& sub) {
    const auto& par = sub->to_parent();
    return ChainMap(restrict_to(f.source(), sub), restrict_to(f.target(), sub),
                    [&](int n, int e) { return f.at(n, par[e]); });
}

/// Extension by zero of a complex over a convex subposet `sub` (of `parent`) to `parent`.
/// `sub` supplies the embedding into `parent`; x may live over any poset equal to it.
inline Cx extend_by_zero(const Cx& x, const PosetPtr& sub, const PosetPtr& parent) {
    if (!same_poset(x.poset(), sub)) throw InputError("extend_by_zero: complex is not over the given subposet");
    const auto& par = sub->to_parent();
    if (static_cast<int>(par.size()) != sub->size()) throw InputError("extend_by_zero: source is not an induced subposet");
    if (!is_convex(*parent, par)) throw InputError("extend_by_zero: subposet is not locally closed");
    std::vector<int> back(parent->size(), -1);
    for (int i = 0; i < sub->size(); ++i) back[par[i]] = i;
    return assemble(
        parent, x.lo(), x.hi(), [&](int n, int e) { return back[e] < 0 ? 0 : x.dim(n, back[e]); },
        [&](int n, int k) {
            auto [a, b] = parent->covers()[k];
            const int da = back[a] < 0 ? 0 : x.dim(n, back[a]);
            const int db = back[b] < 0 ? 0 : x.dim(n, back[b]);
            if (back[a] < 0 || back[b] < 0) return Mat::zero(db, da);
            return x.structure(n, back[a], back[b]);
        },
        [&](int n, int e) { return back[e] < 0 ? Mat::zero(0, 0) : x.d(n, back[e]); });
}

inline Cx extend_by_zero(const Cx& x, const PosetPtr& parent) { return extend_by_zero(x, x.poset(), parent); }

inline ChainMap extend_by_zero(const ChainMap& f, const PosetPtr& sub, const PosetPtr& parent) {
    if (!same_poset(f.poset(), sub)) throw InputError("extend_by_zero: map is not over the given subposet");
    const auto& par = sub->to_parent();
    std::vector<int> back(parent->size(), -1);
    for (int i = 0; i < static_cast<int>(par.size()); ++i) back[par[i]] = i;
    return ChainMap(extend_by_zero(f.source(), sub, parent), extend_by_zero(f.target(), sub, parent), [&](int n, int e) {
        return back[e] < 0 ? Mat::zero(0, 0) : f.at(n, back[e]);
    });
}

inline ChainMap extend_by_zero(const ChainMap& f, const PosetPtr& parent) { return extend_by_zero(f, f.poset(), parent); }

}  // namespace pglue
