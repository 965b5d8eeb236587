#pragma once

#include "sparsens/field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparsens {

enum class FrequencyRule {
    scaled,   // k_{j+1} = r k_j
    rotated,  // k_{j+1} = r k_j + k_j^perp
    explicit_list,
};

enum class AmplitudeRule {
    geometric,  // rho_j = rho_first * r^j
    explicit_list,
};

struct LacunarySpec {
    Frequency base{1, 1};
    BigInt gap_ratio = 9;
    std::size_t count = 1;
    FrequencyRule frequency_rule = FrequencyRule::scaled;
    std::vector<Frequency> frequencies;  // explicit_list only
    AmplitudeRule amplitude_rule = AmplitudeRule::geometric;
    Rational rho_first = 1;
    Rational rho_ratio = 1;
    std::vector<Rational> amplitudes;  // explicit_list only
    std::vector<Phase> phases;         // empty means all zero
};

enum class OmegaRule {
    primitive_perp,  // omega_j = canonical(k_j^perp / gcd(k_j))
    follow_levels,   // omega_j from omega_base by the same recurrence as k_j
    explicit_list,
};

struct ResonantSpec {
    LacunarySpec levels;
    OmegaRule omega_rule = OmegaRule::primitive_perp;
    Frequency omega_base{1, 0};  // follow_levels only
    std::vector<Frequency> omegas;
    std::vector<Phase> etas;  // empty means all zero
};

/// Frequencies k_j of the spec without any validation.
std::vector<Frequency> level_frequencies(const LacunarySpec& spec);
std::vector<WideReal> level_amplitudes(const LacunarySpec& spec);
std::vector<Frequency> level_omegas(const ResonantSpec& spec);

/// sum_j rho_j cos(k_j.x + theta_j) k_j^perp. Throws SpecError on a gap violation
/// (|k_{j+1}| > 8|k_j| must hold strictly) or malformed lists.
SolenoidalField lacunary_field(const LacunarySpec& spec);

/// sum_j rho_j (cos(k_j.x + theta_j) k_j^perp + cos((k_j+omega_j).x + eta_j)(k_j+omega_j)^perp).
/// Throws SpecError unless omega_j.k_j = 0 and |k_j| > 8|omega_j|.
SolenoidalField resonant_field(const ResonantSpec& spec);

struct LevelCheck {
    std::size_t j = 0;
    Frequency k;
    std::optional<Frequency> omega;
    /// |k_{j+1}| / |k_j| (absent on the last level).
    std::optional<double> gap_ratio;
    bool gap_ok = true;
    bool orthogonal = true;
    bool separated = true;
};

struct FamilyReport {
    std::vector<LevelCheck> levels;
    int sobolev_index = 1;
    /// sum_j rho_j^2 |k_j|^(-2N) and a geometric tail estimate.
    WideReal decay_sum;
    WideReal decay_tail;
    /// sum_j rho_j^2 |k_j| / |omega_j| (resonant specs only).
    std::optional<WideReal> summability_sum;
    std::optional<WideReal> summability_tail;
    std::vector<std::string> flags;
    bool all_pass() const { return flags.empty(); }
};

FamilyReport family_conditions_report(const LacunarySpec& spec, int N = 1);
FamilyReport family_conditions_report(const ResonantSpec& spec, int N = 1);

/// Geometric extrapolation of the tail after the last term: t q / (1 - q)
/// with q the ratio of the last two terms (infinite when q >= 1).
WideReal geometric_tail(const std::vector<WideReal>& terms);

struct RandomFieldSpec {
    std::uint64_t seed = 0;
    std::size_t count = 8;
    int radius = 16;
    /// amplitude of the j-th drawn mode is decay^j times a uniform factor in [1/2, 1]
    double decay = 1.0;
};

/// Distinct uniform frequencies in the ball |k| <= radius with random phases.
SolenoidalField random_solenoidal(const RandomFieldSpec& spec);
/// Arbitrary (not divergence-free) vector amplitudes on random frequencies.
GeneralField random_general(const RandomFieldSpec& spec);

}  // namespace sparsens
