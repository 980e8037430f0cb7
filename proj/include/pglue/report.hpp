#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pglue {

/// Outcome of one property check over a batch of seeded samples.
struct CheckRecord {
    std::string name;
    int samples = 0;
    int passed = 0;
    std::optional<std::uint64_t> first_failing_seed;
    std::string detail;  ///< message from the first failure, if any

    [[nodiscard]] bool ok() const { return passed == samples && !first_failing_seed; }
};

using Report = std::vector<CheckRecord>;

inline bool all_passed(const Report& r) {
    for (const auto& c : r)
        if (!c.ok()) return false;
    return true;
}

/// Runs `body(seed)` for seeds base, base+1, ...; a thrown exception counts as a failure.
inline CheckRecord run_check(const std::string& name, int samples, std::uint64_t base_seed,
                             const std::function<bool(std::uint64_t)>& body) {
    CheckRecord rec{name, samples, 0, std::nullopt, {}};
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
        bool ok = false;
        std::string why;
        try {
            ok = body(seed);
            if (!ok) why = "property violated";
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (ok) {
            ++rec.passed;
        } else if (!rec.first_failing_seed) {
            rec.first_failing_seed = seed;
            rec.detail = why;
        }
    }
    return rec;
}

/// Several named properties evaluated on the same sample; one record per property.
inline Report run_checks(const std::vector<std::string>& names, int samples, std::uint64_t base_seed,
                         const std::function<std::vector<bool>(std::uint64_t)>& body) {
    Report out;
    for (const auto& n : names) out.push_back({n, samples, 0, std::nullopt, {}});
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
        std::vector<bool> res;
        std::string why;
        try {
            res = body(seed);
        } catch (const std::exception& e) {
            why = e.what();
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            const bool ok = i < res.size() && res[i];
            if (ok) {
                ++out[i].passed;
            } else if (!out[i].first_failing_seed) {
                out[i].first_failing_seed = seed;
                out[i].detail = why.empty() ? "property violated" : why;
            }
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const CheckRecord& c) {
    os << (c.ok() ? "PASS " : "FAIL ") << c.name << " " << c.passed << "/" << c.samples;
    if (c.first_failing_seed) os << " first_failing_seed=" << *c.first_failing_seed << " (" << c.detail << ")";
    return os;
}

/// Like run_checks, but the body returns one closure per property and each closure is
/// evaluated on its own, so an exception fails only the property that raised it. An
/// exception while preparing the sample still fails every property.
inline Report run_each(const std::vector<std::string>& names, int samples, std::uint64_t base_seed,
                       const std::function<std::vector<std::function<bool()>>(std::uint64_t)>& body) {
    Report out;
    for (const auto& n : names) out.push_back({n, samples, 0, std::nullopt, {}});
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
        std::vector<std::function<bool()>> props;
        std::string setup_error;
        try {
            props = body(seed);
        } catch (const std::exception& e) {
            setup_error = e.what();
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            bool ok = false;
            std::string why = setup_error;
            if (setup_error.empty() && i < props.size()) {
                try {
                    ok = props[i]();
                } catch (const std::exception& e) {
                    why = e.what();
                }
            }
            if (ok) {
                ++out[i].passed;
            } else if (!out[i].first_failing_seed) {
                out[i].first_failing_seed = seed;
                out[i].detail = why.empty() ? "property violated" : why;
            }
        }
    }
    return out;
}

}  // namespace pglue
