#pragma once

#include "sparsens/field.hpp"

namespace sparsens {

/// H^s norm under the averaged measure on T^2:
/// ||rho cos(k.x + theta) k^perp||^2 = rho^2 |k|^(2+2s) / 2, summed over modes.
WideReal sobolev_norm(const SolenoidalField& f, double s);

/// Squared H^s norm of a single mode with amplitude rho at k.
WideReal sobolev_norm2_mode(const Frequency& k, const WideReal& rho, double s);

struct BesovBmoProxies {
    /// sup_j 2^-j sum_{2^j <= |k| < 2^(j+1)} rho_k |k|; upper bound for B^{-1}_{inf,inf}.
    WideReal besov;
    /// sqrt(sum_j (sum_block rho_k)^2); Paley-type estimate, not the exact BMO^{-1} norm.
    WideReal bmo;
};

BesovBmoProxies besov_bmo_proxies(const SolenoidalField& f);

/// Dyadic block index j with 2^j <= |k| < 2^(j+1), computed exactly.
std::int64_t dyadic_block(const Frequency& k);

}  // namespace sparsens
