#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace pglue {

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// Sorted list of element indices.
using Subset = std::vector<int>;

/// A finite partial order. Elements are indexed 0..size()-1 in declaration order; the
/// order relation is stored fully closed, and the Hasse covers are kept separately since
/// representations carry data on covers only.
class Poset {
public:
    /// Builds the reflexive-transitive closure of `relations` (pairs a <= b).
    /// Throws InputError on duplicate identifiers, unknown names or cycles.
    static PosetPtr build(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& relations,
                          std::string name = "poset") {
        auto p = std::shared_ptr<Poset>(new Poset());
        p->name_ = std::move(name);
        p->names_ = std::move(elements);
        const int n = static_cast<int>(p->names_.size());
        for (int i = 0; i < n; ++i) {
            if (!p->index_.emplace(p->names_[i], i).second)
                throw InputError("duplicate element identifier '" + p->names_[i] + "'");
        }
        p->leq_.assign(static_cast<std::size_t>(n) * n, false);
        for (int i = 0; i < n; ++i) p->set_leq(i, i);
        for (const auto& [a, b] : relations) p->set_leq(p->index_of(a), p->index_of(b));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (p->leq(i, k))
                    for (int j = 0; j < n; ++j)
                        if (p->leq(k, j)) p->set_leq(i, j);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p->leq(i, j) && p->leq(j, i))
                    throw InputError("order relation has a cycle through '" + p->names_[i] + "' and '" +
                                     p->names_[j] + "'");
        p->finish();
        return p;
    }

    /// The subposet induced on `members`, in increasing index order. `to_parent()` of the
    /// result maps its indices back to indices of this poset.
    [[nodiscard]] PosetPtr induced(Subset members, std::string name = {}) const {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        auto p = std::shared_ptr<Poset>(new Poset());
        p->name_ = name.empty() ? name_ + "|sub" : std::move(name);
        const int m = static_cast<int>(members.size());
        for (int i = 0; i < m; ++i) {
            check_index(members[i]);
            p->names_.push_back(names_[members[i]]);
            p->index_.emplace(names_[members[i]], i);
        }
        p->leq_.assign(static_cast<std::size_t>(m) * m, false);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (leq(members[i], members[j])) p->set_leq(i, j);
        p->to_parent_ = members;
        p->finish();
        return p;
    }

    [[nodiscard]] int size() const { return static_cast<int>(names_.size()); }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] const std::string& name_of(int i) const { return names_.at(i); }
    [[nodiscard]] bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a) * size() + b]; }
    [[nodiscard]] bool lt(int a, int b) const { return a != b && leq(a, b); }

    [[nodiscard]] int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw InputError("unknown poset element '" + id + "'");
        return it->second;
    }
    [[nodiscard]] bool contains(const std::string& id) const { return index_.count(id) != 0; }

    /// Hasse covers (a, b) with a < b and nothing strictly between, in lexicographic order.
    [[nodiscard]] const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    /// Index of the cover a<b in covers(), or -1.
    [[nodiscard]] int cover_index(int a, int b) const { return cover_idx_[static_cast<std::size_t>(a) * size() + b]; }

    /// A linear extension: elements sorted so that a < b implies a comes first.
    [[nodiscard]] const std::vector<int>& linear_order() const { return topo_; }

    [[nodiscard]] const Subset& to_parent() const { return to_parent_; }

    /// All pairs (a, b) with a <= b, the closed relation.
    [[nodiscard]] std::vector<std::pair<int, int>> relation() const {
        std::vector<std::pair<int, int>> r;
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (leq(a, b)) r.emplace_back(a, b);
        return r;
    }

    [[nodiscard]] Subset all() const {
        Subset s(size());
        for (int i = 0; i < size(); ++i) s[i] = i;
        return s;
    }

    [[nodiscard]] Subset subset_of(const std::vector<std::string>& ids) const {
        Subset s;
        for (const auto& id : ids) s.push_back(index_of(id));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    [[nodiscard]] Subset complement(const Subset& s) const {
        Subset out;
        for (int i = 0; i < size(); ++i)
            if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
        return out;
    }

    /// Structural equality: same identifiers in the same order and the same relation.
    friend bool operator==(const Poset& a, const Poset& b) { return a.names_ == b.names_ && a.leq_ == b.leq_; }

    void check_index(int i) const {
        if (i < 0 || i >= size()) throw InputError("poset element index out of range");
    }

private:
    Poset() = default;

    void set_leq(int a, int b) { leq_[static_cast<std::size_t>(a) * size() + b] = true; }

    void finish() {
        const int n = size();
        cover_idx_.assign(static_cast<std::size_t>(n) * n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (!lt(a, b)) continue;
                bool between = false;
                for (int c = 0; c < n && !between; ++c) between = lt(a, c) && lt(c, b);
                if (!between) {
                    cover_idx_[static_cast<std::size_t>(a) * n + b] = static_cast<int>(covers_.size());
                    covers_.emplace_back(a, b);
                }
            }
        // Kahn's algorithm with smallest-index tie break keeps the order deterministic.
        std::vector<int> indeg(n, 0);
        for (auto [a, b] : covers_) ++indeg[b];
        std::set<int> ready;
        for (int i = 0; i < n; ++i)
            if (!indeg[i]) ready.insert(i);
        while (!ready.empty()) {
            int v = *ready.begin();
            ready.erase(ready.begin());
            topo_.push_back(v);
            for (auto [a, b] : covers_)
                if (a == v && --indeg[b] == 0) ready.insert(b);
        }
    }

    std::string name_;
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<bool> leq_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<int> cover_idx_;
    std::vector<int> topo_;
    Subset to_parent_;
};

inline bool same_poset(const PosetPtr& a, const PosetPtr& b) { return a == b || (a && b && *a == *b); }

inline void require_subset(const Poset& p, const Subset& s) {
    for (int x : s) p.check_index(x);
}

inline Subset sorted(Subset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool is_down_closed(const Poset& p, const Subset& members) {
    const Subset s = sorted(members);
    require_subset(p, s);
    for (int y : s)
        for (int x = 0; x < p.size(); ++x)
            if (p.leq(x, y) && !std::binary_search(s.begin(), s.end(), x)) return false;
    return true;
}

inline bool is_up_closed(const Poset& p, const Subset& members) {
    const Subset s = sorted(members);
    require_subset(p, s);
    for (int x : s)
        for (int y = 0; y < p.size(); ++y)
            if (p.leq(x, y) && !std::binary_search(s.begin(), s.end(), y)) return false;
    return true;
}

/// x in s, y in s, x <= z <= y implies z in s.
inline bool is_convex(const Poset& p, const Subset& members) {
    const Subset s = sorted(members);
    for (int x : s)
        for (int y : s)
            for (int z = 0; z < p.size(); ++z)
                if (p.leq(x, z) && p.leq(z, y) && !std::binary_search(s.begin(), s.end(), z)) return false;
    return true;
}

using Chain = std::vector<int>;

/// All strictly increasing chains inside `s`, ordered by length, then lexicographically.
inline std::vector<Chain> chains(const Poset& p, const Subset& s) {
    require_subset(p, s);
    std::vector<Chain> out;
    std::vector<Chain> layer;
    for (int x : s) layer.push_back({x});
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        out.insert(out.end(), layer.begin(), layer.end());
        std::vector<Chain> next;
        for (const auto& c : layer)
            for (int y : s)
                if (p.lt(c.back(), y)) {
                    Chain d = c;
                    d.push_back(y);
                    next.push_back(std::move(d));
                }
        layer = std::move(next);
    }
    return out;
}

/// Length (number of strict steps) of the longest chain.
inline int height(const Poset& p) {
    int best = 0;
    for (const auto& c : chains(p, p.all())) best = std::max(best, static_cast<int>(c.size()) - 1);
    return best;
}

/// A chain of down-closed subsets U_0 < U_1 < ... < U_n = P. Pure strata are
/// E_k = U_k \ U_{k-1}; intervals [i, j] are the locally closed pieces U_j \ U_{i-1}.
class Stratification {
public:
    Stratification(PosetPtr poset, std::vector<Subset> closed_chain)
        : poset_(std::move(poset)), chain_(std::move(closed_chain)) {
        if (chain_.empty()) throw InputError("stratification needs at least one stratum");
        for (auto& u : chain_) {
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
        }
        for (std::size_t k = 0; k < chain_.size(); ++k) {
            if (!is_down_closed(*poset_, chain_[k]))
                throw InputError("stratum U_" + std::to_string(k) + " is not down-closed");
            const Subset& prev = k ? chain_[k - 1] : Subset{};
            if (!std::includes(chain_[k].begin(), chain_[k].end(), prev.begin(), prev.end()) ||
                chain_[k].size() <= prev.size())
                throw InputError("stratification chain is not strictly increasing at U_" + std::to_string(k));
        }
        if (chain_.back() != poset_->all()) throw InputError("last stratum must be the whole poset");
    }

    [[nodiscard]] const PosetPtr& poset() const { return poset_; }
    /// n, the index of the last stratum; there are n + 1 strata.
    [[nodiscard]] int top() const { return static_cast<int>(chain_.size()) - 1; }
    [[nodiscard]] int count() const { return static_cast<int>(chain_.size()); }
    [[nodiscard]] const Subset& closed(int k) const { return chain_.at(k); }

    [[nodiscard]] Subset stratum(int k) const { return interval(k, k); }

    /// U_j \ U_{i-1}.
    [[nodiscard]] Subset interval(int i, int j) const {
        if (i < 0 || j > top() || i > j) throw InputError("bad stratum interval");
        const Subset& hi = chain_[j];
        if (i == 0) return hi;
        const Subset& lo = chain_[i - 1];
        Subset out;
        std::set_difference(hi.begin(), hi.end(), lo.begin(), lo.end(), std::back_inserter(out));
        return out;
    }

    /// Index of the stratum containing element x.
    [[nodiscard]] int stratum_of(int x) const {
        for (int k = 0; k <= top(); ++k)
            if (std::binary_search(chain_[k].begin(), chain_[k].end(), x)) return k;
        throw InputError("element not covered by stratification");
    }

private:
    PosetPtr poset_;
    std::vector<Subset> chain_;
};

inline Stratification validate_stratification(PosetPtr p, std::vector<Subset> chain) {
    return Stratification(std::move(p), std::move(chain));
}

/// Sierpinski space: c < o, closed point c.
inline PosetPtr sierpinski() { return Poset::build({"c", "o"}, {{"c", "o"}}, "sierpinski"); }

/// Total order on the given identifiers.
inline PosetPtr chain_poset(const std::vector<std::string>& ids, std::string name = "chain") {
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) rel.emplace_back(ids[i], ids[i + 1]);
    return Poset::build(ids, rel, std::move(name));
}

/// The stratification of a chain poset by its singletons.
inline Stratification singleton_strata(const PosetPtr& chain) {
    std::vector<Subset> cl;
    Subset acc;
    for (int v : chain->linear_order()) {
        acc.push_back(v);
        std::sort(acc.begin(), acc.end());
        cl.push_back(acc);
    }
    return Stratification(chain, cl);
}

}  // namespace pglue
