#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "glue.hpp"

namespace pglue {

/// The interval categories S_[i,j] of a stratification and one recollement for every
/// split [i,k] | [k+1,j] of every interval.
class Compass {
public:
    explicit Compass(Stratification s) : strat_(std::move(s)) {
        const int n = strat_.top();
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                nodes_[{i, j}] = strat_.poset()->induced(strat_.interval(i, j),
                                                         "S[" + std::to_string(i) + "," + std::to_string(j) + "]");
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = i; k < j; ++k) {
                    const PosetPtr& whole = node(i, j);
                    const Subset closed_root = strat_.interval(i, k);
                    Subset closed;
                    for (int x = 0; x < whole->size(); ++x)
                        if (std::binary_search(closed_root.begin(), closed_root.end(), whole->to_parent()[x]))
                            closed.push_back(x);
                    edges_[{i, k, j}] = std::make_shared<const Recollement>(Cut::from_closed(whole, closed));
                }
    }

    [[nodiscard]] const Stratification& stratification() const { return strat_; }
    [[nodiscard]] const PosetPtr& root() const { return node(0, top()); }
    [[nodiscard]] int top() const { return strat_.top(); }

    [[nodiscard]] const PosetPtr& node(int i, int j) const {
        const auto it = nodes_.find({i, j});
        if (it == nodes_.end()) throw InputError("no interval [" + std::to_string(i) + "," + std::to_string(j) + "]");
        return it->second;
    }
    /// The recollement of S_[i,j] with closed part S_[i,k] and open part S_[k+1,j].
    [[nodiscard]] const std::shared_ptr<const Recollement>& edge(int i, int k, int j) const {
        const auto it = edges_.find({i, k, j});
        if (it == edges_.end())
            throw InputError("no split [" + std::to_string(i) + "," + std::to_string(k) + "] | [" + std::to_string(k + 1) +
                             "," + std::to_string(j) + "]");
        return it->second;
    }
    [[nodiscard]] std::vector<std::array<int, 3>> splits() const {
        std::vector<std::array<int, 3>> out;
        for (const auto& [key, r] : edges_) out.push_back({key[0], key[1], key[2]});
        return out;
    }
    [[nodiscard]] int recollement_count() const { return static_cast<int>(edges_.size()); }

private:
    Stratification strat_;
    std::map<std::array<int, 2>, PosetPtr> nodes_;
    std::map<std::array<int, 3>, std::shared_ptr<const Recollement>> edges_;
};

/// The square with top B = [i,j+1], closed side A = [i,j], open side D = [i+1,j+1]
/// and bottom C = [i+1,j].
struct BCSquare {
    int i = 0, j = 0;
    [[nodiscard]] std::string describe() const {
        return "square [" + std::to_string(i) + "," + std::to_string(j + 1) + "] over [" + std::to_string(i + 1) + "," +
               std::to_string(j) + "]";
    }
};

inline std::vector<BCSquare> elementary_squares(const Compass& c) {
    std::vector<BCSquare> out;
    for (int i = 0; i <= c.top(); ++i)
        for (int j = i + 1; j + 1 <= c.top(); ++j) out.push_back({i, j});
    return out;
}

struct BCCells {
    bool left_restrict = false;  ///< C-restrictions through A and through D coincide
    bool left_extend = false;    ///< i_L q_L N = q_L i_L N
    bool right = false;          ///< q i_R M ~ i_R q M
};

inline BCCells bc_cells(const Compass& c, const BCSquare& sq, const Cx& m) {
    const int i = sq.i, j = sq.j;
    const auto& b_a = *c.edge(i, j, j + 1);  // B with closed A
    const auto& b_d = *c.edge(i, i, j + 1);  // B with open D
    const auto& a_c = *c.edge(i, i, j);      // A with open C
    const auto& d_c = *c.edge(i + 1, j, j + 1);  // D with closed C
    BCCells out;
    out.left_restrict = a_c.q(b_a.i_L(m)) == d_c.i_L(b_d.q(m));
    const Cx n = b_d.q(m);
    out.left_extend = b_a.i_L(b_d.q_L(n)) == a_c.q_L(d_c.i_L(n));
    const Cx r1 = a_c.q(b_a.i_R(m)), r2 = d_c.i_R(b_d.q(m));
    // Both fiber formulas run over the chains of the top stratum above each point of C, so
    // the canonical comparison is the identity whenever it exists.
    out.right = r1 == r2 && is_qiso(identity(r1));
    if (!out.right && homology_dims(r1) == homology_dims(r2)) {
        const auto [g, err] = ChainMap::make(r1, r2, [&](int n2, int e) { return Mat::identity(r1.dim(n2, e)); });
        out.right = g && is_qiso(*g);
    }
    return out;
}

inline Report bc_check(const Compass& c, const BCSquare& sq, int samples, std::uint64_t seed, const RandomParams& params = {}) {
    const std::string tag = sq.describe() + ": ";
    const std::vector<std::string> names = {tag + "left cell (restrictions)", tag + "left cell (extension by zero)",
                                            tag + "right cell"};
    const PosetPtr& b = c.node(sq.i, sq.j + 1);
    return run_checks(names, samples, seed, [&](std::uint64_t s) {
        const BCCells r = bc_cells(c, sq, random_complex(b, params, s));
        return std::vector<bool>{r.left_restrict, r.left_extend, r.right};
    });
}

/// A binary bracketing of the leaves lo..hi.
struct Parenthesization {
    int lo = 0, hi = 0, split = -1;
    std::shared_ptr<const Parenthesization> left, right;

    [[nodiscard]] bool is_leaf() const { return split < 0; }
    [[nodiscard]] std::string describe() const {
        if (is_leaf()) return std::to_string(lo);
        return "(" + left->describe() + " " + right->describe() + ")";
    }
};
using ParenPtr = std::shared_ptr<const Parenthesization>;

inline ParenPtr leaf(int i) {
    auto p = std::make_shared<Parenthesization>();
    p->lo = p->hi = i;
    return p;
}
inline ParenPtr join(ParenPtr l, ParenPtr r) {
    if (l->hi + 1 != r->lo) throw InputError("parenthesization: children are not contiguous");
    auto p = std::make_shared<Parenthesization>();
    p->lo = l->lo;
    p->hi = r->hi;
    p->split = l->hi;
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
}

inline std::vector<ParenPtr> all_parenthesizations(int lo, int hi) {
    if (lo == hi) return {leaf(lo)};
    std::vector<ParenPtr> out;
    for (int k = lo; k < hi; ++k)
        for (const auto& l : all_parenthesizations(lo, k))
            for (const auto& r : all_parenthesizations(k + 1, hi)) out.push_back(join(l, r));
    return out;
}
inline ParenPtr left_comb(int n) {
    ParenPtr p = leaf(0);
    for (int i = 1; i <= n; ++i) p = join(p, leaf(i));
    return p;
}
inline ParenPtr right_comb(int n) {
    ParenPtr p = leaf(n);
    for (int i = n - 1; i >= 0; --i) p = join(leaf(i), p);
    return p;
}
/// Every bracketing when n <= 3, otherwise the two combs.
inline std::vector<ParenPtr> default_parenthesizations(int n, bool exhaustive_beyond_3 = false) {
    if (n <= 3 || exhaustive_beyond_3) return all_parenthesizations(0, n);
    return {left_comb(n), right_comb(n)};
}

/// Parses e.g. "((0 1) 2)" over leaves 0..n.
inline ParenPtr parse_parenthesization(const std::string& text, int n) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<ParenPtr()> parse = [&]() -> ParenPtr {
        skip();
        if (pos >= text.size()) throw InputError("parenthesization: unexpected end");
        if (text[pos] == '(') {
            ++pos;
            ParenPtr l = parse();
            ParenPtr r = parse();
            skip();
            if (pos >= text.size() || text[pos] != ')') throw InputError("parenthesization: expected ')'");
            ++pos;
            return join(l, r);
        }
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw InputError("parenthesization: expected a leaf index at offset " + std::to_string(pos));
        }
        pos += used;
        return leaf(v);
    };
    ParenPtr p = parse();
    skip();
    if (pos != text.size()) throw InputError("parenthesization: trailing text");
    if (p->lo != 0 || p->hi != n) throw InputError("parenthesization does not cover strata 0.." + std::to_string(n));
    return p;
}

using Perversity = std::vector<int>;

inline ProviderPtr iterated_glue(const Compass& c, const Perversity& p, const Parenthesization& t) {
    if (static_cast<int>(p.size()) != c.top() + 1)
        throw InputError("perversity has " + std::to_string(p.size()) + " entries, expected " + std::to_string(c.top() + 1));
    if (t.lo < 0 || t.hi > c.top()) throw InputError("parenthesization does not match the stratification");
    if (t.is_leaf()) return standard_provider(c.node(t.lo, t.lo), p[t.lo]);
    return glued_provider(c.edge(t.lo, t.split, t.hi), iterated_glue(c, p, *t.left), iterated_glue(c, p, *t.right));
}

inline ProviderPtr iterated_glue(const Compass& c, const Perversity& p, const ParenPtr& t) {
    if (!t || t->lo != 0 || t->hi != c.top()) throw InputError("parenthesization does not cover every stratum");
    return iterated_glue(c, p, *t);
}

/// One restriction step along a path from the root to a leaf.
struct PathStep {
    int i, k, j;
    bool closed;  ///< to [i,k] (closed part) rather than [k+1,j]
};

inline std::vector<std::vector<PathStep>> paths_to_leaf(int lo, int hi, int leaf_index) {
    if (lo == hi) return {{}};
    std::vector<std::vector<PathStep>> out;
    for (int k = lo; k < hi; ++k) {
        const bool closed = leaf_index <= k;
        const auto rest = closed ? paths_to_leaf(lo, k, leaf_index) : paths_to_leaf(k + 1, hi, leaf_index);
        for (auto path : rest) {
            path.insert(path.begin(), PathStep{lo, k, hi, closed});
            out.push_back(std::move(path));
        }
    }
    return out;
}

/// Applies the path using i_L (left wing) or i_R (right wing) on closed steps and q on open steps.
inline Cx along_path(const Compass& c, const std::vector<PathStep>& path, Cx x, bool right_wing) {
    for (const auto& s : path) {
        const Recollement& r = *c.edge(s.i, s.k, s.j);
        x = s.closed ? (right_wing ? r.i_R(x) : r.i_L(x)) : r.q(x);
    }
    return x;
}

struct WingedResult {
    bool left = true, right = true;
};

/// Left-winged composites must agree strictly; right-winged ones are compared by homology
/// dimensions, which is all the model offers without a canonical comparison map.
inline WingedResult winged_paths(const Compass& c, const Cx& x) {
    WingedResult out;
    for (int leaf_index = 0; leaf_index <= c.top(); ++leaf_index) {
        const auto paths = paths_to_leaf(0, c.top(), leaf_index);
        const Cx l0 = along_path(c, paths[0], x, false), r0 = along_path(c, paths[0], x, true);
        const HomologyDims h0 = homology_dims(r0);
        for (std::size_t k = 1; k < paths.size(); ++k) {
            out.left = out.left && along_path(c, paths[k], x, false) == l0;
            out.right = out.right && homology_dims(along_path(c, paths[k], x, true)) == h0;
        }
    }
    return out;
}

/// S_a X ~ S_b X and R_a X ~ R_b X via lifts through a cofibrant replacement of S_a X.
inline bool truncations_agree(const TruncationProvider& a, const TruncationProvider& b, const Cx& x) {
    const ChainMap eps_a = a.coreflect(x), eps_b = b.coreflect(x);
    const ChainMap eta_b = b.reflect(x);
    if (!(homology_dims(eps_a.source()) == homology_dims(eps_b.source()))) return false;
    if (!(homology_dims(a.reflect(x).target()) == homology_dims(eta_b.target()))) return false;
    const Resolution res = cofibrant_replace(eps_a.source());
    const GenVectors v = postcompose(eps_a, res.P, res.w);
    const auto s = lift_into_fiber(res, v, eta_b);
    const auto r = cone_lift(res, v, eta_b);
    return s && r && is_qiso(*s) && is_qiso(*r);
}

/// Gluing over [i,j] seen from a child: the closed child's verdicts and truncations are
/// recovered on objects i N, the open child's through q.
inline bool compass_coherent(const GluedProvider& g, const Cx& x, const Cx& n) {
    const Recollement& r = g.recollement();
    const Cx in = r.i(n);
    bool ok = g.is_ge0(in) == g.t0().is_ge0(n) && g.is_lt0(in) == g.t0().is_lt0(n);
    ok = ok && homology_dims(r.i_L(g.coreflect(in).source())) == homology_dims(g.t0().coreflect(n).source());
    ok = ok && homology_dims(r.q(g.coreflect(x).source())) == homology_dims(g.t1().coreflect(r.q(x)).source());
    return ok;
}

inline Report assoc_check(const Compass& c, const Perversity& p, int samples, std::uint64_t seed,
                          const RandomParams& params = {}, std::vector<ParenPtr> trees = {}) {
    if (trees.empty()) trees = default_parenthesizations(c.top());
    std::vector<ProviderPtr> provs;
    for (const auto& t : trees) provs.push_back(iterated_glue(c, p, t));
    const std::vector<std::string> names = {"membership verdicts agree across parenthesizations",
                                            "truncations agree across parenthesizations",
                                            "left-winged paths agree", "right-winged paths agree",
                                            "compass coherence"};
    return run_checks(names, samples, seed, [&](std::uint64_t s) {
        const Cx x = random_complex(c.root(), params, s);
        bool verdicts = true, truncs = true;
        for (int k = -1; k <= 1; ++k) {
            const Cx y = shift(x, k);
            for (std::size_t t = 1; t < provs.size(); ++t)
                verdicts = verdicts && provs[t]->is_ge0(y) == provs[0]->is_ge0(y) && provs[t]->is_lt0(y) == provs[0]->is_lt0(y);
        }
        for (std::size_t t = 1; t < provs.size(); ++t) truncs = truncs && truncations_agree(*provs[0], *provs[t], x);
        const WingedResult w = winged_paths(c, x);
        bool coherent = true;
        for (std::size_t t = 0; t < provs.size() && c.top() >= 1; ++t) {
            const auto* g = dynamic_cast<const GluedProvider*>(provs[t].get());
            if (!g) continue;
            const Cx n = random_complex(g->recollement().closed_part(), params, s ^ 0x5bd1e995ULL);
            coherent = coherent && compass_coherent(*g, x, n);
        }
        return std::vector<bool>{verdicts, truncs, w.left, w.right, coherent};
    });
}

}  // namespace pglue
