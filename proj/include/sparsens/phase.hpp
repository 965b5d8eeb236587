#pragma once

#include "sparsens/bigint.hpp"
#include "sparsens/wide_real.hpp"

#include <optional>
#include <string>

namespace sparsens {

/// Angle pi * num / den, kept reduced with value in [0, 2pi).
class Phase {
public:
    Phase() = default;
    Phase(BigInt num, BigInt den);

    /// q quarter turns, i.e. q * pi/2.
    static Phase quarter(long long q);
    static Phase pi() { return quarter(2); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    /// Value is one of {0, pi/2, pi, 3pi/2}.
    bool is_quarter_turn() const;
    /// 0..3 for quarter-turn phases.
    std::optional<int> quarter_index() const;

    /// Exact {0, +-1} at quarter turns.
    WideReal cos() const;
    WideReal sin() const;
    double radians() const;

    /// "num/den" as a multiple of pi.
    std::string str() const;

    Phase operator-() const { return Phase(-num_, den_); }
    friend Phase operator+(const Phase& a, const Phase& b);
    friend Phase operator-(const Phase& a, const Phase& b) { return a + (-b); }
    friend bool operator==(const Phase& a, const Phase& b) = default;

private:
    void normalize();

    BigInt num_{0};
    BigInt den_{1};
};

}  // namespace sparsens
