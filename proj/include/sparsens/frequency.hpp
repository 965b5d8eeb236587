#pragma once

#include "sparsens/bigint.hpp"

#include <string>
#include <string_view>

namespace sparsens {

/// Lattice point k = (k1, k2) of Z^2.
struct Frequency {
    BigInt k1{0};
    BigInt k2{0};

    Frequency() = default;
    Frequency(BigInt a, BigInt b) : k1(std::move(a)), k2(std::move(b)) {}
    Frequency(long long a, long long b) : k1(a), k2(b) {}

    bool is_zero() const { return k1 == 0 && k2 == 0; }
    /// k1 > 0, or k1 == 0 and k2 > 0: arg(k1 + i k2) in (-pi/2, pi/2].
    bool is_canonical() const { return k1 > 0 || (k1 == 0 && k2 > 0); }
    BigInt norm2() const { return k1 * k1 + k2 * k2; }
    /// |k| rounded to double (may overflow to inf for astronomically large k).
    double norm() const;

    std::string str() const;

    friend bool operator==(const Frequency&, const Frequency&) = default;
};

inline Frequency operator-(const Frequency& a) { return {-a.k1, -a.k2}; }
inline Frequency operator+(const Frequency& a, const Frequency& b) { return {a.k1 + b.k1, a.k2 + b.k2}; }
inline Frequency operator-(const Frequency& a, const Frequency& b) { return {a.k1 - b.k1, a.k2 - b.k2}; }
inline Frequency operator*(const BigInt& s, const Frequency& a) { return {s * a.k1, s * a.k2}; }

/// k^perp = (-k2, k1).
inline Frequency perp(const Frequency& k) { return {-k.k2, k.k1}; }
inline BigInt dot(const Frequency& a, const Frequency& b) { return a.k1 * b.k1 + a.k2 * b.k2; }
/// a1 b2 - a2 b1, which equals a^perp . b.
inline BigInt cross(const Frequency& a, const Frequency& b) { return a.k1 * b.k2 - a.k2 * b.k1; }

/// k or -k, whichever is canonical. Throws InvalidFrequency for k = 0.
Frequency canonical(const Frequency& k);

/// Parses "a,b".
Frequency parse_frequency(std::string_view text);

/// Storage order: by |k|^2, then k1, then k2.
struct FrequencyLess {
    bool operator()(const Frequency& a, const Frequency& b) const;
};

}  // namespace sparsens
