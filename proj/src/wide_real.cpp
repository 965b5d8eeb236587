#include "sparsens/wide_real.hpp"

#include "sparsens/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace sparsens {

using Float = WideReal::Float;

WideReal::WideReal(double v)
{
    if (!std::isfinite(v))
        throw RangeError("WideReal cannot hold a non-finite double");
    value_ = Float(v);
}

WideReal::WideReal(const BigInt& v) : value_(v) {}

WideReal::WideReal(const Rational& v)
    : value_(Float(boost::multiprecision::numerator(v)) / Float(boost::multiprecision::denominator(v)))
{
}

WideReal WideReal::from_parts(int sign, double mantissa, std::int64_t exponent)
{
    if (sign == 0)
        return WideReal();
    if (!(mantissa >= 1.0 && mantissa < 2.0))
        throw FormatError("WideReal mantissa must lie in [1,2)");
    Float m(mantissa);
    Float v = boost::multiprecision::ldexp(m, exponent);
    return WideReal(sign < 0 ? Float(-v) : v);
}

WideReal WideReal::from_parts(int sign, const std::string& mantissa, std::int64_t exponent)
{
    if (sign == 0)
        return WideReal();
    Float m;
    try {
        m = Float(mantissa);
    } catch (const std::exception&) {
        throw FormatError("bad WideReal mantissa '" + mantissa + "'");
    }
    if (!(m >= 1 && m < 2))
        throw FormatError("WideReal mantissa must lie in [1,2)");
    Float v = boost::multiprecision::ldexp(m, exponent);
    return WideReal(sign < 0 ? Float(-v) : v);
}

int WideReal::sign() const { return value_.sign(); }

namespace {

Float unit_mantissa(const Float& v, std::int64_t& exponent)
{
    std::int64_t e = 0;
    Float m = boost::multiprecision::frexp(boost::multiprecision::abs(v), &e);
    exponent = e - 1;
    return m * 2;
}

}  // namespace

double WideReal::mantissa() const
{
    if (is_zero())
        return 0.0;
    std::int64_t e = 0;
    return static_cast<double>(unit_mantissa(value_, e));
}

std::int64_t WideReal::exponent() const
{
    if (is_zero())
        return 0;
    std::int64_t e = 0;
    unit_mantissa(value_, e);
    return e;
}

std::string WideReal::mantissa_digits() const
{
    if (is_zero())
        return "0";
    std::int64_t e = 0;
    return unit_mantissa(value_, e).str(std::numeric_limits<Float>::max_digits10,
                                        std::ios_base::fixed);
}

bool WideReal::mantissa_fits_double() const
{
    if (is_zero())
        return true;
    std::int64_t e = 0;
    Float m = unit_mantissa(value_, e);
    return Float(static_cast<double>(m)) == m;
}

double WideReal::to_double() const
{
    if (is_zero())
        return 0.0;
    std::int64_t e = exponent();
    if (e > std::numeric_limits<double>::max_exponent - 1 ||
        e < std::numeric_limits<double>::min_exponent - 1)
        throw RangeError("value " + str(6) + " outside double range");
    return static_cast<double>(value_);
}

double WideReal::approx_double() const
{
    if (is_zero())
        return 0.0;
    std::int64_t e = exponent();
    if (e > std::numeric_limits<double>::max_exponent - 1)
        return sign() * std::numeric_limits<double>::infinity();
    if (e < std::numeric_limits<double>::min_exponent - 60)
        return 0.0;
    return static_cast<double>(value_);
}

std::string WideReal::str(int digits) const
{
    return value_.str(digits, std::ios_base::scientific);
}

WideReal abs(const WideReal& x) { return WideReal(Float(boost::multiprecision::abs(x.raw()))); }

WideReal sqrt(const WideReal& x)
{
    if (x.sign() < 0)
        throw std::domain_error("sqrt of a negative WideReal");
    return WideReal(Float(boost::multiprecision::sqrt(x.raw())));
}

WideReal ldexp(const WideReal& x, std::int64_t e)
{
    return WideReal(Float(boost::multiprecision::ldexp(x.raw(), e)));
}

WideReal pow(const WideReal& x, std::int64_t n)
{
    if (n < 0)
        return WideReal(1) / pow(x, -n);
    WideReal result(1);
    WideReal base = x;
    while (n > 0) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n > 0)
            base *= base;
    }
    return result;
}

WideReal pow(const WideReal& x, double y)
{
    if (std::floor(y) == y && std::abs(y) < 1e15)
        return pow(x, static_cast<std::int64_t>(y));
    if (x.sign() <= 0)
        throw std::domain_error("non-integer power of a non-positive WideReal");
    return WideReal(Float(boost::multiprecision::pow(x.raw(), Float(y))));
}

WideReal hypot(const WideReal& a, const WideReal& b) { return sqrt(a * a + b * b); }

WideReal max(const WideReal& a, const WideReal& b) { return a < b ? b : a; }

WideReal pi_wide() { return WideReal(boost::math::constants::pi<Float>()); }

double relative_difference(const WideReal& a, const WideReal& b)
{
    WideReal scale = max(abs(a), abs(b));
    if (scale.is_zero())
        return 0.0;
    return (abs(a - b) / scale).approx_double();
}

}  // namespace sparsens
