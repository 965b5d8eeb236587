#include "sparsens/norms.hpp"

#include <map>

namespace sparsens {

WideReal sobolev_norm2_mode(const Frequency& k, const WideReal& rho, double s)
{
    return rho * rho * pow(WideReal(k.norm2()), 1.0 + s) / WideReal(2);
}

WideReal sobolev_norm(const SolenoidalField& f, double s)
{
    WideReal sum;
    for (const auto& [k, p] : f.map())
        sum += (p.a * p.a + p.b * p.b) * pow(WideReal(k.norm2()), 1.0 + s);
    return sqrt(sum / WideReal(2));
}

std::int64_t dyadic_block(const Frequency& k)
{
    // 4^j <= |k|^2 < 4^(j+1)
    return msb(k.norm2()) / 2;
}

BesovBmoProxies besov_bmo_proxies(const SolenoidalField& f)
{
    std::map<std::int64_t, std::pair<WideReal, WideReal>> blocks;  // j -> (sum rho|k|, sum rho)
    for (const auto& [k, p] : f.map()) {
        WideReal rho = p.magnitude();
        auto& [weighted, plain] = blocks[dyadic_block(k)];
        weighted += rho * sqrt(WideReal(k.norm2()));
        plain += rho;
    }
    BesovBmoProxies out;
    WideReal sq;
    for (const auto& [j, sums] : blocks) {
        out.besov = max(out.besov, ldexp(sums.first, -j));
        sq += sums.second * sums.second;
    }
    out.bmo = sqrt(sq);
    return out;
}

}  // namespace sparsens
