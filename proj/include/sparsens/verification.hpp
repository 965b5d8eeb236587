#pragma once

#include "sparsens/construction.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sparsens {

struct VerificationOptions {
    /// Sobolev index for the admissibility sums of U_n.
    int admissibility_index = 3;
    std::size_t pair_cutoff = std::numeric_limits<std::size_t>::max();
    double telescoping_tolerance = 1e-9;
    double closed_form_tolerance = 1e-12;
};

enum class CheckStatus { pass, fail, not_applicable };

std::string to_string(CheckStatus s);
CheckStatus parse_check_status(const std::string& s);

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct AdmissibilitySummary {
    std::size_t pairs = 0;
    WideReal total;
    WideReal leading;
    WideReal final_quarter_tail;
    bool monotone = true;
};

struct StageReport {
    int n = 0;
    std::size_t entries = 0;
    /// max relative phasor error between residual_brute and residual_from_ledger
    double telescoping_error = 0;
    WideReal residual_hm3;
    WideReal tail_majorant;
    /// |gamma|^2 range over A_n
    BigInt a_min_norm2;
    BigInt a_max_norm2;
    /// |gamma| / |k_n| range over A_n (n >= 1)
    double window_min = 0;
    double window_max = 0;
    /// max|A_n| < min|A_{n+1}| (absent on the last stage)
    std::optional<bool> separated_from_next;
    bool geometry_ok = true;
    WideReal rho;
    /// rho_0 N_n^{-1/4}
    WideReal rho_bound;
    /// |k_{j(n)}| / |omega_n| and |lambda_n| / (|k_{j(n)}|^2 rho_{j(n)} sup(1, rho_0..rho_{j(n)}))
    WideReal c0_omega_witness;
    WideReal c0_lambda_witness;
    /// sum_{j<=n} rho_j^2 |k_j| / |omega_j| and 2 C0^3 rho0 (1 + sum_{m<=n} (8m-1) N_m^{-1/4})
    WideReal summability;
    WideReal summability_majorant;
    WideReal hm1;
    /// (rho_0^2 + 2 sum rho_j^2)/2 under a square root, when U_n has no collisions
    std::optional<WideReal> hm1_closed;
    WideReal besov;
    WideReal bmo;
    AdmissibilitySummary admissibility;
};

struct VerificationReport {
    std::vector<StageReport> stages;
    std::vector<Check> checks;
    /// smallest C0 satisfying both stage inequalities so far
    WideReal c0_witness;
    /// tail_majorant(last) / tail_majorant(1)
    std::optional<WideReal> tail_ratio;
    bool unsafe_schedule = false;

    bool passed() const;
    const Check* find(const std::string& name) const;
};

using AmplitudeMap = std::map<Frequency, WideReal, FrequencyLess>;

/// max over frequencies of |a - b| / max(|a|, |b|, gross(k)); gross may be empty.
double telescoping_error(const SolenoidalField& brute, const SolenoidalField& ledger,
                         const AmplitudeMap* gross = nullptr);

/// Largest nominal |lambda_p| per frequency over p <= last.
AmplitudeMap gross_amplitudes(const ConstructionState& state, std::size_t last);

/// sum over ledger entries p > n of |lambda_p| |gamma_p|^-2 / sqrt2 (whole ledger).
WideReal tail_majorant(const ConstructionState& state, int n);

VerificationReport verify_construction(const ConstructionState& state, const VerificationOptions& options = {});

}  // namespace sparsens
