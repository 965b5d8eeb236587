#include "sparsens/frequency.hpp"

#include "sparsens/errors.hpp"

#include <cmath>

namespace sparsens {

double Frequency::norm() const
{
    double a = static_cast<double>(k1);
    double b = static_cast<double>(k2);
    return std::hypot(a, b);
}

std::string Frequency::str() const { return "(" + k1.str() + "," + k2.str() + ")"; }

Frequency canonical(const Frequency& k)
{
    if (k.is_zero())
        throw InvalidFrequency("zero frequency has no canonical form");
    return k.is_canonical() ? k : -k;
}

Frequency parse_frequency(std::string_view text)
{
    auto comma = text.find(',');
    if (comma == std::string_view::npos)
        throw std::invalid_argument("frequency must be given as 'k1,k2': '" + std::string(text) + "'");
    return {parse_bigint(text.substr(0, comma)), parse_bigint(text.substr(comma + 1))};
}

bool FrequencyLess::operator()(const Frequency& a, const Frequency& b) const
{
    BigInt na = a.norm2();
    BigInt nb = b.norm2();
    if (na != nb)
        return na < nb;
    if (a.k1 != b.k1)
        return a.k1 < b.k1;
    return a.k2 < b.k2;
}

}  // namespace sparsens
