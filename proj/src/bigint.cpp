#include "sparsens/bigint.hpp"

#include <stdexcept>

namespace sparsens {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body))
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    BigInt v{std::string(body)};
    return negative ? BigInt(-v) : v;
}

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos)
        return Rational(parse_bigint(text));

    std::string_view ipart = text.substr(0, dot);
    std::string_view fpart = text.substr(dot + 1);
    bool negative = !ipart.empty() && ipart.front() == '-';
    if (!ipart.empty() && (ipart.front() == '-' || ipart.front() == '+'))
        ipart.remove_prefix(1);
    if ((ipart.empty() && fpart.empty()) || (!ipart.empty() && !all_digits(ipart)) ||
        (!fpart.empty() && !all_digits(fpart)))
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");

    BigInt scale = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i)
        scale *= 10;
    BigInt whole = ipart.empty() ? BigInt(0) : BigInt(std::string(ipart));
    BigInt frac = fpart.empty() ? BigInt(0) : BigInt(std::string(fpart));
    Rational r(whole * scale + frac, scale);
    return negative ? Rational(-r) : r;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v)
{
    auto num = boost::multiprecision::numerator(v);
    auto den = boost::multiprecision::denominator(v);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

BigInt isqrt(const BigInt& v)
{
    if (v < 0)
        throw std::domain_error("isqrt of a negative value");
    return boost::multiprecision::sqrt(v);
}

std::int64_t msb(const BigInt& v)
{
    if (v <= 0)
        throw std::domain_error("msb of a non-positive value");
    return static_cast<std::int64_t>(boost::multiprecision::msb(v));
}

}  // namespace sparsens
