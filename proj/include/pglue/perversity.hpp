#pragma once

#include <memory>
#include <string>
#include <vector>

#include "compass.hpp"

namespace pglue {

/// The standard t-structure on one stratum shifted by k.
inline ProviderPtr perverted_provider(PosetPtr stratum, int k) { return standard_provider(std::move(stratum), k); }

inline Perversity add_constant(Perversity p, int m) {
    for (int& v : p) v += m;
    return p;
}

inline std::string describe(const Perversity& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

/// base transported along X -> X[m]: X >= 0 iff X[-m] >= 0 for base, S X = (S_base X[-m])[m].
class ShiftedProvider final : public TruncationProvider {
public:
    ShiftedProvider(ProviderPtr base, int m) : base_(std::move(base)), m_(m) {}

    [[nodiscard]] const PosetPtr& poset() const override { return base_->poset(); }
    [[nodiscard]] bool is_ge0(const Cx& x) const override { return base_->is_ge0(shift(x, -m_)); }
    [[nodiscard]] bool is_lt0(const Cx& x) const override { return base_->is_lt0(shift(x, -m_)); }
    [[nodiscard]] ChainMap coreflect(const Cx& x) const override { return shift(base_->coreflect(shift(x, -m_)), m_); }
    [[nodiscard]] ChainMap reflect(const Cx& x) const override { return shift(base_->reflect(shift(x, -m_)), m_); }
    [[nodiscard]] ChainMap coreflect_map(const ChainMap& f) const override {
        return shift(base_->coreflect_map(shift(f, -m_)), m_);
    }
    [[nodiscard]] ChainMap reflect_map(const ChainMap& f) const override {
        return shift(base_->reflect_map(shift(f, -m_)), m_);
    }
    [[nodiscard]] std::string describe() const override { return base_->describe() + "[" + std::to_string(m_) + "]"; }

private:
    ProviderPtr base_;
    int m_;
};

/// The glued perverted t-structure on the whole poset; the left comb unless a bracketing is given.
inline ProviderPtr glued_perverted(const Compass& c, const Perversity& p, const ParenPtr& tree = nullptr) {
    return iterated_glue(c, p, tree ? tree : left_comb(c.top()));
}

/// Heart membership: X >= 0 and X[-1] < 0.
inline bool is_perverse(const TruncationProvider& t, const Cx& x) { return t.is_ge0(x) && t.is_lt0(shift(x, -1)); }

inline bool is_perverse(const Compass& c, const Perversity& p, const Cx& x) { return is_perverse(*glued_perverted(c, p), x); }

/// The heart part of X: R' S X with S from t and R' from t shifted up by one, i.e. the
/// truncation to [0, 1).
inline Cx heart_part(const TruncationProvider& t, const TruncationProvider& t_plus_1, const Cx& x) {
    return t_plus_1.reflect(t.coreflect(x).source()).target();
}

/// Equivariance and constant-perversity laws on seeded samples; perversity entries and shifts
/// are drawn from [-2, 2].
inline Report shift_equivariance_check(const Compass& c, int samples, std::uint64_t seed, const RandomParams& params = {}) {
    const std::vector<std::string> names = {
        "E under p+1 on f iff E under p on f[-1]",
        "S_{p+1}(X[1]) ~ (S_p X)[1]",
        "membership under (p+m, X[m]) independent of m",
        "constant p = k on X equals p = 0 on X[-k]",
        "heart holds perverse parts and their sums",
    };
    const int strata = c.top() + 1;
    return run_checks(names, samples, seed, [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        std::uniform_int_distribution<int> val(-2, 2);
        Perversity p(strata);
        for (int& v : p) v = val(rng);
        const ProviderPtr tp = glued_perverted(c, p), tp1 = glued_perverted(c, add_constant(p, 1));
        const Cx x = random_complex(c.root(), params, s);
        const Cx y = random_complex(c.root(), params, s + 15485863);
        const ChainMap f = random_chain_map(x, y, rng);

        const bool e_eq = is_qiso(tp1->reflect_map(f)) == is_qiso(tp->reflect_map(shift(f, -1)));
        const ShiftedProvider moved(tp, 1);
        const bool s_eq = truncations_agree(*tp1, moved, x);

        bool indep = true;
        const bool ge = tp->is_ge0(x), lt = tp->is_lt0(x);
        for (int m = -2; m <= 2; ++m) {
            const ProviderPtr tm = glued_perverted(c, add_constant(p, m));
            const Cx xm = shift(x, m);
            indep = indep && tm->is_ge0(xm) == ge && tm->is_lt0(xm) == lt;
        }

        const int k = val(rng);
        const ProviderPtr tk = glued_perverted(c, Perversity(strata, k)), t0 = glued_perverted(c, Perversity(strata, 0));
        const Cx xk = shift(x, -k);
        const bool constant = tk->is_ge0(x) == t0->is_ge0(xk) && tk->is_lt0(x) == t0->is_lt0(xk);

        const Cx hx = heart_part(*tp, *tp1, x), hy = heart_part(*tp, *tp1, y);
        const bool heart = is_perverse(*tp, hx) && is_perverse(*tp, hy) && is_perverse(*tp, direct_sum(hx, hy)) &&
                           is_perverse(*tp, Cx::zero(c.root()));
        return std::vector<bool>{e_eq, s_eq, indep, constant, heart};
    });
}

}  // namespace pglue
