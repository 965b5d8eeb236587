#pragma once

#include "sparsens/bigint.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace sparsens {

/// Real number with a 192-bit mantissa and a 64-bit binary exponent.
///
/// Amplitudes in the construction span hundreds of decimal orders and the
/// brute-force residual cancels terms of relative size up to ~1e22, so both
/// range and precision exceed what double offers.
class WideReal {
public:
    static constexpr unsigned precision_bits = 192;
    using Float = boost::multiprecision::number<
        boost::multiprecision::cpp_bin_float<precision_bits,
                                             boost::multiprecision::digit_base_2, void,
                                             std::int64_t>,
        boost::multiprecision::et_off>;

    WideReal() = default;
    WideReal(double v);  // NOLINT(google-explicit-constructor)
    WideReal(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    explicit WideReal(const BigInt& v);
    explicit WideReal(const Rational& v);
    explicit WideReal(Float v) : value_(std::move(v)) {}

    /// sign * mantissa * 2^exponent with mantissa in [1,2).
    static WideReal from_parts(int sign, double mantissa, std::int64_t exponent);
    /// Same, with the mantissa given as a full-precision decimal string.
    static WideReal from_parts(int sign, const std::string& mantissa, std::int64_t exponent);

    int sign() const;
    /// Mantissa in [1,2), rounded to double; 0 for zero.
    double mantissa() const;
    std::int64_t exponent() const;
    /// Decimal rendering of the full mantissa (round-trips exactly).
    std::string mantissa_digits() const;
    /// True when the mantissa is exactly representable as a double.
    bool mantissa_fits_double() const;

    bool is_zero() const { return value_.is_zero(); }
    /// Throws RangeError if the value overflows or underflows double.
    double to_double() const;
    /// Like to_double, but flushes underflow to 0 and overflow to +-inf.
    double approx_double() const;
    const Float& raw() const { return value_; }

    std::string str(int digits = 17) const;

    WideReal operator-() const { return WideReal(Float(-value_)); }
    WideReal& operator+=(const WideReal& o) { value_ += o.value_; return *this; }
    WideReal& operator-=(const WideReal& o) { value_ -= o.value_; return *this; }
    WideReal& operator*=(const WideReal& o) { value_ *= o.value_; return *this; }
    WideReal& operator/=(const WideReal& o) { value_ /= o.value_; return *this; }

    friend WideReal operator+(WideReal a, const WideReal& b) { return a += b; }
    friend WideReal operator-(WideReal a, const WideReal& b) { return a -= b; }
    friend WideReal operator*(WideReal a, const WideReal& b) { return a *= b; }
    friend WideReal operator/(WideReal a, const WideReal& b) { return a /= b; }

    friend bool operator==(const WideReal& a, const WideReal& b) { return a.value_ == b.value_; }
    friend std::partial_ordering operator<=>(const WideReal& a, const WideReal& b)
    {
        if (a.value_ < b.value_)
            return std::partial_ordering::less;
        if (a.value_ > b.value_)
            return std::partial_ordering::greater;
        if (a.value_ == b.value_)
            return std::partial_ordering::equivalent;
        return std::partial_ordering::unordered;
    }

private:
    Float value_{0};
};

WideReal abs(const WideReal& x);
WideReal sqrt(const WideReal& x);
WideReal ldexp(const WideReal& x, std::int64_t e);
/// x^n for integer n by repeated squaring.
WideReal pow(const WideReal& x, std::int64_t n);
/// x^y for x > 0; integer y falls back to the exact-squaring path.
WideReal pow(const WideReal& x, double y);
WideReal hypot(const WideReal& a, const WideReal& b);
WideReal max(const WideReal& a, const WideReal& b);
WideReal pi_wide();

/// Unit in the last place of the mantissa, relative.
inline double wide_epsilon() { return std::ldexp(1.0, -static_cast<int>(WideReal::precision_bits) + 1); }

/// |a - b| / max(|a|, |b|), or 0 when both vanish.
double relative_difference(const WideReal& a, const WideReal& b);

}  // namespace sparsens
