#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pglue {

/// Thrown for malformed input: bad files, dimension mismatches, violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Elem = std::uint32_t;

namespace detail {
inline std::atomic<Elem>& modulus_slot() {
    static std::atomic<Elem> p{101};
    return p;
}
}  // namespace detail

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Characteristic of the coefficient field GF(p) for this session.
inline Elem characteristic() { return detail::modulus_slot().load(std::memory_order_relaxed); }

/// Set the session characteristic (a prime below 2^16).
inline void set_characteristic(std::uint64_t p) {
    if (!is_prime(p) || p >= (1u << 16))
        throw InputError("characteristic must be a prime below 65536, got " + std::to_string(p));
    detail::modulus_slot().store(static_cast<Elem>(p), std::memory_order_relaxed);
}

/// RAII guard restoring the previous characteristic, used by tests that switch fields.
class CharacteristicScope {
public:
    explicit CharacteristicScope(std::uint64_t p) : saved_(characteristic()) { set_characteristic(p); }
    ~CharacteristicScope() { detail::modulus_slot().store(saved_); }
    CharacteristicScope(const CharacteristicScope&) = delete;
    CharacteristicScope& operator=(const CharacteristicScope&) = delete;

private:
    Elem saved_;
};

namespace gf {

inline Elem reduce(std::int64_t v) {
    const std::int64_t p = characteristic();
    v %= p;
    return static_cast<Elem>(v < 0 ? v + p : v);
}
inline Elem add(Elem a, Elem b) {
    const Elem p = characteristic();
    const Elem s = a + b;
    return s >= p ? s - p : s;
}
inline Elem sub(Elem a, Elem b) {
    const Elem p = characteristic();
    return a >= b ? a - b : a + p - b;
}
inline Elem neg(Elem a) { return a == 0 ? 0 : characteristic() - a; }
inline Elem mul(Elem a, Elem b) {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % characteristic());
}
inline Elem pow(Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
inline Elem inv(Elem a) {
    if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
    return pow(a, characteristic() - 2);
}
/// (-1)^k as a field element.
inline Elem sign(long k) { return (k % 2 == 0) ? 1 : neg(1); }

}  // namespace gf
}  // namespace pglue
