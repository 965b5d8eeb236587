#include "sparsens/construction.hpp"

#include "sparsens/errors.hpp"
#include "sparsens/nonlinearity.hpp"

#include <array>

namespace sparsens {

namespace {

constexpr std::array<std::pair<EntryRule, const char*>, 12> rule_names{{
    {EntryRule::initial, "initial"},
    {EntryRule::laplacian_v, "laplacian_v"},
    {EntryRule::laplacian_w, "laplacian_w"},
    {EntryRule::resonant_sum, "resonant_sum"},
    {EntryRule::v_plus_v, "v_plus_v"},
    {EntryRule::v_minus_v, "v_minus_v"},
    {EntryRule::v_plus_w, "v_plus_w"},
    {EntryRule::v_minus_w, "v_minus_w"},
    {EntryRule::w_plus_v, "w_plus_v"},
    {EntryRule::w_minus_v, "w_minus_v"},
    {EntryRule::w_plus_w, "w_plus_w"},
    {EntryRule::w_minus_w, "w_minus_w"},
}};

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace

std::string to_string(EntryRule r)
{
    for (const auto& [rule, name] : rule_names)
        if (rule == r)
            return name;
    return "unknown";
}

EntryRule parse_entry_rule(const std::string& s)
{
    for (const auto& [rule, name] : rule_names)
        if (s == name)
            return rule;
    throw FormatError("unknown ledger rule '" + s + "'");
}

void validate(const ConstructionConfig& config)
{
    if (config.rho0 <= 0 || config.rho0 >= 1)
        throw ConfigError("rho0 must lie in (0,1)");
    if (config.k0.is_zero())
        throw ConfigError("k0 must be a nonzero frequency");
    if (config.C0 <= 0)
        throw ConfigError("C0 must be positive");
    if (config.exponent < 0)
        throw ConfigError("schedule exponent must be non-negative");
    if (config.max_stage < 0)
        throw ConfigError("stage count must be non-negative");
}

ConstructionConfig toy_config(int stages)
{
    ConstructionConfig c;
    c.unsafe_schedule = true;
    c.max_stage = stages;
    return c;
}

std::pair<std::size_t, std::size_t> ledger_layout(int n)
{
    if (n < 0)
        throw std::invalid_argument("ledger_layout: negative stage");
    if (n == 0)
        return {1, 1};
    auto m = static_cast<std::size_t>(n);
    return {4 * m * m - 5 * m + 3, 4 * m * m + 3 * m + 1};
}

int stage_of_index(std::size_t p)
{
    if (p == 0)
        throw std::invalid_argument("stage_of_index: ledger indices start at 1");
    int n = 0;
    while (ledger_layout(n).second < p)
        ++n;
    return n;
}

ConstructionState init_construction(const ConstructionConfig& config)
{
    validate(config);
    ConstructionState s;
    s.config = config;

    StageRecord zero;
    zero.k = canonical(config.k0);
    zero.rho = WideReal(config.rho0);
    zero.eta = config.k0.is_canonical() ? Phase() : Phase::pi();
    zero.first = zero.last = 1;
    s.stages.push_back(zero);

    // Delta u_0 = -rho_0 |k_0|^2 cos(k_0.x + theta_0) k_0^perp
    LedgerEntry e;
    e.p = 1;
    e.gamma = zero.k;
    e.lambda_abs = zero.rho * WideReal(zero.k.norm2());
    e.beta = zero.eta + Phase::pi();
    e.stage = 0;
    e.rule = EntryRule::initial;
    s.ledger.push_back(e);
    return s;
}

BigInt choose_N(const ConstructionState& state, int n)
{
    if (n < 1 || n > state.completed() + 1)
        throw ScheduleError("choose_N: stage " + std::to_string(n) + " is not the next stage");
    const ConstructionConfig& cfg = state.config;
    const Frequency& omega = state.entry(static_cast<std::size_t>(n)).gamma;
    const Frequency& previous = state.stages.at(static_cast<std::size_t>(n - 1)).k;

    // smallest N with N^2 |omega|^2 > 64 |k_{n-1}|^2
    BigInt w2 = omega.norm2();
    BigInt bound = 64 * previous.norm2();
    BigInt sep = isqrt(bound / w2);
    while (sep * sep * w2 <= bound)
        ++sep;
    BigInt hard = sep > 9 ? sep : BigInt(9);

    if (auto it = cfg.N_overrides.find(n); it != cfg.N_overrides.end()) {
        if (it->second < hard)
            throw ScheduleError("override N_" + std::to_string(n) + " = " + to_string(it->second) +
                                " is below the hard floor " + to_string(hard) +
                                " (N > 8 and |k_n| > 8|k_{n-1}|)");
        return it->second;
    }
    if (cfg.unsafe_schedule)
        return hard;

    // N >= 4 C0^6 rho0^-4
    Rational c6 = pow(boost::multiprecision::numerator(cfg.C0), 6);
    c6 /= pow(boost::multiprecision::denominator(cfg.C0), 6);
    Rational r4 = pow(boost::multiprecision::numerator(cfg.rho0), 4);
    r4 /= pow(boost::multiprecision::denominator(cfg.rho0), 4);
    Rational q = 4 * c6 / r4;
    BigInt c_floor = ceil_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
    BigInt e_floor = pow(BigInt(8 * n - 1), static_cast<unsigned>(cfg.exponent));
    BigInt N = hard;
    if (c_floor > N)
        N = c_floor;
    if (e_floor > N)
        N = e_floor;
    return N;
}

namespace {

struct RawMode {
    Frequency k;
    WideReal rho;
    Phase phase;
};

RawMode v_mode(const StageRecord& s) { return {s.k, s.rho, s.n == 0 ? s.eta : Phase()}; }
RawMode w_mode(const StageRecord& s) { return {s.k + *s.omega, s.rho, s.eta}; }

// Appends s cos(K.x + phi) K^perp as a normalized ledger entry.
void emit(ConstructionState& st, int n, EntryRule rule, int partner, const Frequency& K, WideReal s,
          Phase phi)
{
    if (K.is_zero())
        throw DegeneracyError("stage " + std::to_string(n) + " rule " + to_string(rule) +
                              (partner >= 0 ? " with stage " + std::to_string(partner) : std::string()) +
                              " produced the zero frequency");
    if (s < WideReal(0)) {
        s = -s;
        phi = phi + Phase::pi();
    }
    LedgerEntry e;
    e.p = st.ledger.size() + 1;
    e.gamma = K;
    e.beta = phi;
    if (!K.is_canonical()) {
        e.gamma = -K;
        e.beta = Phase::pi() - phi;
    }
    e.lambda_abs = s;
    e.stage = n;
    e.rule = rule;
    e.partner = partner;
    st.ledger.push_back(e);
}

void emit_laplacian(ConstructionState& st, int n, EntryRule rule, const RawMode& m)
{
    emit(st, n, rule, -1, m.k, -(m.rho * WideReal(m.k.norm2())), m.phase);
}

// Residual share -P(A.grad B + B.grad A) at A.k + B.k (sum) or A.k - B.k (difference),
// from the closed symmetric formula.
void emit_cross(ConstructionState& st, int n, EntryRule rule, int partner, const RawMode& A, const RawMode& B,
                bool sum)
{
    Frequency K = sum ? A.k + B.k : A.k - B.k;
    if (K.is_zero())
        emit(st, n, rule, partner, K, WideReal(), Phase());
    BigInt numer = cross(A.k, B.k) * (B.k.norm2() - A.k.norm2());
    WideReal s = -(A.rho * B.rho * WideReal(numer) / WideReal(2 * K.norm2()));
    Phase phi = (sum ? A.phase + B.phase : A.phase - B.phase) + Phase::quarter(1);
    emit(st, n, rule, partner, K, s, phi);
}

}  // namespace

void advance_stage(ConstructionState& state)
{
    const int n = state.completed() + 1;
    auto [first, last] = ledger_layout(n);
    if (state.ledger.size() != first - 1)
        throw ScheduleError("ledger length does not match the layout before stage " + std::to_string(n));

    const LedgerEntry& target = state.entry(static_cast<std::size_t>(n));
    StageRecord rec;
    rec.n = n;
    rec.omega = target.gamma;
    rec.N = choose_N(state, n);
    rec.k = rec.N * Frequency(rec.omega->k2, -rec.omega->k1);
    rec.null_stage = target.lambda_abs.is_zero();
    rec.rho = rec.null_stage
                  ? WideReal()
                  : sqrt(WideReal(2) * target.lambda_abs / (WideReal(rec.N) * WideReal(rec.omega->norm2())));
    rec.eta = target.beta - Phase::quarter(1);
    rec.first = first;
    rec.last = last;
    state.stages.push_back(rec);

    const RawMode v = v_mode(rec);
    const RawMode w = w_mode(rec);
    emit_laplacian(state, n, EntryRule::laplacian_v, v);
    emit_laplacian(state, n, EntryRule::laplacian_w, w);
    emit_cross(state, n, EntryRule::resonant_sum, n, v, w, true);

    auto older_v = [&](int j) { return v_mode(state.stages[static_cast<std::size_t>(j)]); };
    auto older_w = [&](int j) { return w_mode(state.stages[static_cast<std::size_t>(j)]); };
    struct Family {
        EntryRule rule;
        bool from_w;
        bool to_w;
        bool sum;
    };
    constexpr std::array<Family, 8> families{{
        {EntryRule::v_plus_v, false, false, true},
        {EntryRule::v_minus_v, false, false, false},
        {EntryRule::v_plus_w, false, true, true},
        {EntryRule::v_minus_w, false, true, false},
        {EntryRule::w_plus_v, true, false, true},
        {EntryRule::w_minus_v, true, false, false},
        {EntryRule::w_plus_w, true, true, true},
        {EntryRule::w_minus_w, true, true, false},
    }};
    for (const auto& f : families) {
        const RawMode& A = f.from_w ? w : v;
        for (int j = f.to_w ? 1 : 0; j < n; ++j)
            emit_cross(state, n, f.rule, j, A, f.to_w ? older_w(j) : older_v(j), f.sum);
    }
    if (state.ledger.size() != last)
        throw ScheduleError("stage " + std::to_string(n) + " emitted " +
                            std::to_string(state.ledger.size() - first + 1) + " entries, expected " +
                            std::to_string(8 * n - 1));
}

ConstructionState build_construction(const ConstructionConfig& config)
{
    ConstructionState s = init_construction(config);
    while (s.completed() < config.max_stage)
        advance_stage(s);
    return s;
}

SolenoidalField materialize_partial(const ConstructionState& state, int n)
{
    if (n < 0 || n > state.completed())
        throw std::invalid_argument("materialize_partial: stage " + std::to_string(n) + " not built");
    SolenoidalField f;
    const StageRecord& zero = state.stages.front();
    f.add_polar(zero.k, zero.rho, zero.eta);
    for (int j = 1; j <= n; ++j) {
        const StageRecord& s = state.stages[static_cast<std::size_t>(j)];
        if (s.rho.is_zero())
            continue;
        RawMode v = v_mode(s), w = w_mode(s);
        f.add_polar(v.k, v.rho, v.phase);
        f.add_polar(w.k, w.rho, w.phase);
    }
    return f;
}

SolenoidalField residual_from_ledger(const ConstructionState& state, int n)
{
    if (n < 0 || n > state.completed())
        throw std::invalid_argument("residual_from_ledger: stage " + std::to_string(n) + " not built");
    SolenoidalField f;
    for (std::size_t p = static_cast<std::size_t>(n) + 1; p <= ledger_layout(n).second; ++p) {
        const LedgerEntry& e = state.entry(p);
        if (!e.lambda_abs.is_zero())
            f.add_polar(e.gamma, e.lambda_abs, e.beta);
    }
    return f;
}

SolenoidalField residual_brute(const ConstructionState& state, int n)
{
    SolenoidalField U = materialize_partial(state, n);
    return superpose(laplacian(U), negate(nonlinear_term(U)));
}

}  // namespace sparsens
