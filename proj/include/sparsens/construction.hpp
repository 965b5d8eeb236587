#pragma once

#include "sparsens/field.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sparsens {

struct ConstructionConfig {
    Rational rho0{1, 2};
    Frequency k0{1, 1};
    Rational C0 = 4;
    int exponent = 12;
    /// Drops the C0 and (8n-1)^e floors on N_n.
    bool unsafe_schedule = false;
    /// Per-stage N_n; must still satisfy N > 8 and the separation floor.
    std::map<int, BigInt> N_overrides;
    int max_stage = 8;
};

/// Throws ConfigError describing the first invalid field.
void validate(const ConstructionConfig& config);

/// The toy configuration used for small-frequency experiments.
ConstructionConfig toy_config(int stages = 3);

/// Which term of the stage increment produced a ledger entry.
enum class EntryRule {
    initial,         // Delta u_0
    laplacian_v,     // Delta v_n at k_n
    laplacian_w,     // Delta w_n at k_n + omega_n
    resonant_sum,    // v_n with w_n at 2k_n + omega_n
    v_plus_v,
    v_minus_v,
    v_plus_w,
    v_minus_w,
    w_plus_v,
    w_minus_v,
    w_plus_w,
    w_minus_w,
};

std::string to_string(EntryRule r);
EntryRule parse_entry_rule(const std::string& s);

/// Term |lambda| cos(gamma.x + beta) gamma^perp of the residual ledger.
struct LedgerEntry {
    std::size_t p = 0;
    Frequency gamma;
    WideReal lambda_abs;
    Phase beta;
    int stage = 0;
    EntryRule rule = EntryRule::initial;
    /// Older stage paired with stage n (cross terms only), else -1.
    int partner = -1;
};

struct StageRecord {
    int n = 0;
    /// gamma_n; absent for stage 0.
    std::optional<Frequency> omega;
    BigInt N = 1;
    /// Frequency of v_n, oriented as N (omega_2, -omega_1); k_0 for stage 0.
    Frequency k;
    WideReal rho;
    /// Phase of w_n (stage 0: phase of u_0).
    Phase eta;
    std::size_t first = 0;
    std::size_t last = 0;
    bool null_stage = false;
};

struct ConstructionState {
    ConstructionConfig config;
    std::vector<StageRecord> stages;
    std::vector<LedgerEntry> ledger;

    int completed() const { return static_cast<int>(stages.size()) - 1; }
    const LedgerEntry& entry(std::size_t p) const { return ledger.at(p - 1); }
};

/// (first, last) ledger indices of A_n; (1, 1) for n = 0.
std::pair<std::size_t, std::size_t> ledger_layout(int n);
/// Stage whose A_n holds index p.
int stage_of_index(std::size_t p);

ConstructionState init_construction(const ConstructionConfig& config);
/// Minimal N_n meeting N > 8, |k_n| > 8|k_{n-1}| and (unless unsafe) the C0 and
/// (8n-1)^e floors. Overrides skip the last two floors; an override below the
/// hard floors throws ScheduleError.
BigInt choose_N(const ConstructionState& state, int n);
/// Runs stage n = completed() + 1 and appends A_n.
void advance_stage(ConstructionState& state);
/// init_construction then advance_stage up to config.max_stage.
ConstructionState build_construction(const ConstructionConfig& config);

/// U_n = u_0 + sum_{j=1}^n (v_j + w_j).
SolenoidalField materialize_partial(const ConstructionState& state, int n);
/// Merge of ledger entries n+1 .. last(n).
SolenoidalField residual_from_ledger(const ConstructionState& state, int n);
/// Delta U_n - P(U_n . grad U_n) computed without the ledger.
SolenoidalField residual_brute(const ConstructionState& state, int n);

}  // namespace sparsens
