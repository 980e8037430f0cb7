#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poset.hpp"

namespace pglue {

/// A finite-dimensional representation of a poset over GF(p), i.e. a sheaf on the
/// Alexandrov space whose open sets are the up-closed subsets.
///
/// Structure maps live on Hasse covers; composites along x <= y are precomputed at
/// construction, which is also where commutativity of every diamond is checked.
class Rep {
public:
    Rep() = default;

    Rep(PosetPtr poset, std::vector<int> dims, std::vector<Mat> cover_maps)
        : poset_(std::move(poset)), dims_(std::move(dims)), cover_maps_(std::move(cover_maps)) {
        if (auto err = build_composites()) throw InputError(*err);
    }

    /// Non-throwing constructor: returns the first violated condition instead.
    static std::pair<std::optional<Rep>, std::string> make(PosetPtr poset, std::vector<int> dims,
                                                           std::vector<Mat> cover_maps) {
        Rep r;
        r.poset_ = std::move(poset);
        r.dims_ = std::move(dims);
        r.cover_maps_ = std::move(cover_maps);
        if (auto err = r.build_composites()) return {std::nullopt, *err};
        return {std::move(r), {}};
    }

    static Rep zero(const PosetPtr& p) {
        return Rep(p, std::vector<int>(p->size(), 0), std::vector<Mat>(p->covers().size()));
    }

    [[nodiscard]] const PosetPtr& poset() const { return poset_; }
    [[nodiscard]] int dim(int x) const { return dims_.at(x); }
    [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
    [[nodiscard]] const Mat& cover_map(int k) const { return cover_maps_.at(k); }
    [[nodiscard]] const std::vector<Mat>& cover_maps() const { return cover_maps_; }

    /// Structure map M(x) -> M(y) for x <= y.
    [[nodiscard]] const Mat& map(int x, int y) const {
        if (!poset_->leq(x, y)) throw InputError("structure map requested for incomparable elements");
        return composite_[static_cast<std::size_t>(x) * poset_->size() + y];
    }

    [[nodiscard]] int total_dim() const {
        int s = 0;
        for (int d : dims_) s += d;
        return s;
    }
    [[nodiscard]] bool is_zero() const { return total_dim() == 0; }

    friend bool operator==(const Rep& a, const Rep& b) {
        return same_poset(a.poset_, b.poset_) && a.dims_ == b.dims_ && a.cover_maps_ == b.cover_maps_;
    }

private:
    std::optional<std::string> build_composites() {
        const Poset& p = *poset_;
        const int n = p.size();
        if (static_cast<int>(dims_.size()) != n) return "dims length differs from poset size";
        if (cover_maps_.size() != p.covers().size()) return "one structure matrix per cover relation required";
        for (std::size_t k = 0; k < p.covers().size(); ++k) {
            auto [a, b] = p.covers()[k];
            const Mat& m = cover_maps_[k];
            if (m.rows() != static_cast<std::size_t>(dims_[b]) || m.cols() != static_cast<std::size_t>(dims_[a]))
                return "structure map " + p.name_of(a) + "<" + p.name_of(b) + " has shape " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                       std::to_string(dims_[b]) + "x" + std::to_string(dims_[a]);
        }
        composite_.assign(static_cast<std::size_t>(n) * n, Mat());
        std::vector<bool> have(static_cast<std::size_t>(n) * n, false);
        for (int x = 0; x < n; ++x) {
            composite_[static_cast<std::size_t>(x) * n + x] = Mat::identity(dims_[x]);
            have[static_cast<std::size_t>(x) * n + x] = true;
            for (int z : p.linear_order()) {
                if (!p.lt(x, z)) continue;
                for (std::size_t k = 0; k < p.covers().size(); ++k) {
                    auto [y, zz] = p.covers()[k];
                    if (zz != z || !p.leq(x, y)) continue;
                    Mat via = cover_maps_[k] * composite_[static_cast<std::size_t>(x) * n + y];
                    auto& slot = composite_[static_cast<std::size_t>(x) * n + z];
                    if (!have[static_cast<std::size_t>(x) * n + z]) {
                        slot = std::move(via);
                        have[static_cast<std::size_t>(x) * n + z] = true;
                    } else if (!(slot == via)) {
                        return "diamond from " + p.name_of(x) + " to " + p.name_of(z) + " does not commute (via " +
                               p.name_of(y) + ")";
                    }
                }
            }
        }
        return std::nullopt;
    }

    PosetPtr poset_;
    std::vector<int> dims_;
    std::vector<Mat> cover_maps_;
    std::vector<Mat> composite_;
};

/// A natural transformation between representations of the same poset.
struct RepMap {
    Rep source;
    Rep target;
    std::vector<Mat> components;

    [[nodiscard]] const Mat& at(int x) const { return components.at(x); }
};

/// First naturality or shape violation of a family of components, if any.
inline std::optional<std::string> naturality_error(const Rep& s, const Rep& t, const std::vector<Mat>& comps) {
    const Poset& p = *s.poset();
    if (static_cast<int>(comps.size()) != p.size()) return "one component per element required";
    for (int x = 0; x < p.size(); ++x)
        if (comps[x].rows() != static_cast<std::size_t>(t.dim(x)) || comps[x].cols() != static_cast<std::size_t>(s.dim(x)))
            return "component at " + p.name_of(x) + " has the wrong shape";
    for (std::size_t k = 0; k < p.covers().size(); ++k) {
        auto [a, b] = p.covers()[k];
        if (!(t.cover_map(k) * comps[a] == comps[b] * s.cover_map(k)))
            return "naturality fails on " + p.name_of(a) + "<" + p.name_of(b);
    }
    return std::nullopt;
}

inline RepMap make_rep_map(Rep s, Rep t, std::vector<Mat> comps) {
    if (!same_poset(s.poset(), t.poset())) throw InputError("representations over different posets");
    if (auto e = naturality_error(s, t, comps)) throw InputError(*e);
    return RepMap{std::move(s), std::move(t), std::move(comps)};
}

inline RepMap identity_map(const Rep& m) {
    std::vector<Mat> c;
    for (int x = 0; x < m.poset()->size(); ++x) c.push_back(Mat::identity(m.dim(x)));
    return RepMap{m, m, std::move(c)};
}

inline RepMap zero_map(const Rep& s, const Rep& t) {
    std::vector<Mat> c;
    for (int x = 0; x < s.poset()->size(); ++x) c.push_back(Mat::zero(t.dim(x), s.dim(x)));
    return RepMap{s, t, std::move(c)};
}

/// Rep whose value is k at every y >= x (and 0 elsewhere), identities in between.
inline Rep projective(const PosetPtr& p, int x) {
    p->check_index(x);
    std::vector<int> dims(p->size());
    for (int y = 0; y < p->size(); ++y) dims[y] = p->leq(x, y) ? 1 : 0;
    std::vector<Mat> maps;
    for (auto [a, b] : p->covers()) maps.push_back(dims[a] && dims[b] ? Mat::identity(1) : Mat::zero(dims[b], dims[a]));
    return Rep(p, dims, maps);
}

/// One-dimensional at x, zero elsewhere.
inline Rep skyscraper(const PosetPtr& p, int x) {
    p->check_index(x);
    std::vector<int> dims(p->size(), 0);
    dims[x] = 1;
    std::vector<Mat> maps;
    for (auto [a, b] : p->covers()) maps.push_back(Mat::zero(dims[b], dims[a]));
    return Rep(p, dims, maps);
}

/// Constant sheaf of rank r.
inline Rep constant(const PosetPtr& p, int r = 1) {
    std::vector<Mat> maps(p->covers().size(), Mat::identity(r));
    return Rep(p, std::vector<int>(p->size(), r), maps);
}

inline Rep direct_sum(const Rep& a, const Rep& b) {
    std::vector<int> dims(a.dims().size());
    for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = a.dim(static_cast<int>(i)) + b.dim(static_cast<int>(i));
    std::vector<Mat> maps;
    for (std::size_t k = 0; k < a.cover_maps().size(); ++k) maps.push_back(block_diag(a.cover_map(k), b.cover_map(k)));
    return Rep(a.poset(), dims, maps);
}

/// Basis of the space of natural transformations M -> N, as the kernel of the
/// naturality equations in the unknown component entries.
inline std::vector<RepMap> hom_space(const Rep& m, const Rep& n) {
    if (!same_poset(m.poset(), n.poset())) throw InputError("hom_space: representations over different posets");
    const Poset& p = *m.poset();
    std::vector<std::size_t> off(p.size() + 1, 0);
    for (int x = 0; x < p.size(); ++x) off[x + 1] = off[x] + static_cast<std::size_t>(n.dim(x)) * m.dim(x);
    const std::size_t unknowns = off[p.size()];
    std::size_t eqs = 0;
    for (auto [a, b] : p.covers()) eqs += static_cast<std::size_t>(n.dim(b)) * m.dim(a);
    Mat sys(eqs, unknowns);
    std::size_t row = 0;
    for (std::size_t k = 0; k < p.covers().size(); ++k) {
        auto [a, b] = p.covers()[k];
        const Mat& nab = n.cover_map(k);
        const Mat& mab = m.cover_map(k);
        const int ma = m.dim(a), mb = m.dim(b), nb = n.dim(b), na = n.dim(a);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < ma; ++j, ++row) {
                // (N_ab phi_a)(i,j) - (phi_b M_ab)(i,j) = 0
                for (int q = 0; q < na; ++q)
                    sys(row, off[a] + static_cast<std::size_t>(q) * ma + j) =
                        gf::add(sys(row, off[a] + static_cast<std::size_t>(q) * ma + j), nab(i, q));
                for (int q = 0; q < mb; ++q)
                    sys(row, off[b] + static_cast<std::size_t>(i) * mb + q) =
                        gf::sub(sys(row, off[b] + static_cast<std::size_t>(i) * mb + q), mab(q, j));
            }
    }
    const Mat ker = kernel_basis(sys);
    std::vector<RepMap> basis;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Mat> comps;
        for (int x = 0; x < p.size(); ++x) {
            Mat cx(n.dim(x), m.dim(x));
            for (int i = 0; i < n.dim(x); ++i)
                for (int j = 0; j < m.dim(x); ++j) cx(i, j) = ker(off[x] + static_cast<std::size_t>(i) * m.dim(x) + j, c);
            comps.push_back(std::move(cx));
        }
        basis.push_back(RepMap{m, n, std::move(comps)});
    }
    return basis;
}

struct KernelResult {
    Rep kernel;
    RepMap inclusion;
};

/// Pointwise kernel with induced structure maps.
inline KernelResult rep_kernel(const RepMap& f) {
    const Poset& p = *f.source.poset();
    std::vector<Mat> basis;
    std::vector<int> dims;
    for (int x = 0; x < p.size(); ++x) {
        basis.push_back(kernel_basis(f.at(x)));
        dims.push_back(static_cast<int>(basis.back().cols()));
    }
    std::vector<Mat> maps;
    for (std::size_t k = 0; k < p.covers().size(); ++k) {
        auto [a, b] = p.covers()[k];
        auto c = solve(basis[b], f.source.cover_map(k) * basis[a]);
        if (!c) throw std::logic_error("rep_kernel: structure map does not preserve kernel (map not natural)");
        maps.push_back(std::move(*c));
    }
    Rep k(f.source.poset(), dims, maps);
    return {k, RepMap{k, f.source, basis}};
}

struct CokernelResult {
    Rep cokernel;
    RepMap projection;
};

/// Pointwise cokernel with induced structure maps.
inline CokernelResult rep_cokernel(const RepMap& f) {
    const Poset& p = *f.source.poset();
    std::vector<Mat> proj;
    std::vector<int> dims;
    for (int x = 0; x < p.size(); ++x) {
        proj.push_back(cokernel_projection(f.at(x)));
        dims.push_back(static_cast<int>(proj.back().rows()));
    }
    std::vector<Mat> maps;
    for (std::size_t k = 0; k < p.covers().size(); ++k) {
        auto [a, b] = p.covers()[k];
        auto c = solve_left(proj[a], proj[b] * f.target.cover_map(k));
        if (!c) throw std::logic_error("rep_cokernel: structure map does not descend (map not natural)");
        maps.push_back(std::move(*c));
    }
    Rep c(f.source.poset(), dims, maps);
    return {c, RepMap{f.target, c, proj}};
}

/// Number of copies of P_x in a projective cover of M: dim M(x) minus the span of
/// images from strictly smaller elements.
inline int top_multiplicity(const Rep& m, int x) {
    const Poset& p = *m.poset();
    Mat images(m.dim(x), 0);
    for (int y = 0; y < p.size(); ++y)
        if (p.lt(y, x)) images = hstack(images, m.map(y, x));
    return m.dim(x) - static_cast<int>(rank(images));
}

/// M is projective iff its projective cover has the same dimension vector.
inline bool is_projective(const Rep& m) {
    const Poset& p = *m.poset();
    std::vector<int> tops(p.size());
    for (int x = 0; x < p.size(); ++x) tops[x] = top_multiplicity(m, x);
    for (int y = 0; y < p.size(); ++y) {
        int d = 0;
        for (int x = 0; x < p.size(); ++x)
            if (p.leq(x, y)) d += tops[x];
        if (d != m.dim(y)) return false;
    }
    return true;
}

}  // namespace pglue
