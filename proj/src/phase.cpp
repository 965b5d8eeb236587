#include "sparsens/phase.hpp"

#include "sparsens/errors.hpp"

#include <boost/math/constants/constants.hpp>

namespace sparsens {

Phase::Phase(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_ == 0)
        throw std::invalid_argument("phase with zero denominator");
    normalize();
}

void Phase::normalize()
{
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    BigInt period = 2 * den_;
    num_ %= period;
    if (num_ < 0)
        num_ += period;
}

Phase Phase::quarter(long long q) { return Phase(BigInt(q), BigInt(2)); }

Phase operator+(const Phase& a, const Phase& b)
{
    return Phase(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

bool Phase::is_quarter_turn() const { return den_ == 1 || den_ == 2; }

std::optional<int> Phase::quarter_index() const
{
    if (!is_quarter_turn())
        return std::nullopt;
    BigInt q = den_ == 1 ? BigInt(num_ * 2) : num_;
    return static_cast<int>(q);
}

WideReal Phase::cos() const
{
    if (auto q = quarter_index()) {
        static constexpr int table[4] = {1, 0, -1, 0};
        return WideReal(table[*q]);
    }
    WideReal::Float angle = boost::math::constants::pi<WideReal::Float>() *
                            WideReal::Float(num_) / WideReal::Float(den_);
    return WideReal(WideReal::Float(boost::multiprecision::cos(angle)));
}

WideReal Phase::sin() const
{
    if (auto q = quarter_index()) {
        static constexpr int table[4] = {0, 1, 0, -1};
        return WideReal(table[*q]);
    }
    WideReal::Float angle = boost::math::constants::pi<WideReal::Float>() *
                            WideReal::Float(num_) / WideReal::Float(den_);
    return WideReal(WideReal::Float(boost::multiprecision::sin(angle)));
}

double Phase::radians() const
{
    return boost::math::constants::pi<double>() * static_cast<double>(num_) /
           static_cast<double>(den_);
}

std::string Phase::str() const { return num_.str() + "/" + den_.str(); }

}  // namespace sparsens
