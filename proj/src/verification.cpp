#include "sparsens/verification.hpp"

#include "sparsens/errors.hpp"
#include "sparsens/nonlinearity.hpp"
#include "sparsens/norms.hpp"

#include <algorithm>
#include <sstream>

namespace sparsens {

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::not_applicable:
        return "n/a";
    }
    return "fail";
}

CheckStatus parse_check_status(const std::string& s)
{
    if (s == "pass")
        return CheckStatus::pass;
    if (s == "fail")
        return CheckStatus::fail;
    if (s == "n/a")
        return CheckStatus::not_applicable;
    throw FormatError("unknown check status '" + s + "'");
}

bool VerificationReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

const Check* VerificationReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

double telescoping_error(const SolenoidalField& brute, const SolenoidalField& ledger, const AmplitudeMap* gross)
{
    double worst = 0;
    auto visit = [&](const SolenoidalField& x, const SolenoidalField& y) {
        for (const auto& [k, p] : x.map()) {
            const Phasor* q = y.find(k);
            Phasor other = q ? *q : Phasor{};
            WideReal diff = hypot(p.a - other.a, p.b - other.b);
            WideReal scale = max(p.magnitude(), other.magnitude());
            if (gross)
                if (auto it = gross->find(k); it != gross->end())
                    scale = max(scale, it->second);
            if (!diff.is_zero())
                worst = std::max(worst, (diff / scale).approx_double());
        }
    };
    visit(brute, ledger);
    visit(ledger, brute);
    return worst;
}

AmplitudeMap gross_amplitudes(const ConstructionState& state, std::size_t last)
{
    AmplitudeMap gross;
    for (std::size_t p = 1; p <= last; ++p) {
        const LedgerEntry& e = state.entry(p);
        auto [it, fresh] = gross.try_emplace(e.gamma, e.lambda_abs);
        if (!fresh)
            it->second = max(it->second, e.lambda_abs);
    }
    return gross;
}

WideReal tail_majorant(const ConstructionState& state, int n)
{
    static const WideReal inv_sqrt2 = WideReal(1) / sqrt(WideReal(2));
    WideReal t;
    for (std::size_t p = static_cast<std::size_t>(n) + 1; p <= state.ledger.size(); ++p) {
        const LedgerEntry& e = state.entry(p);
        t += e.lambda_abs / WideReal(e.gamma.norm2()) * inv_sqrt2;
    }
    return t;
}

namespace {

std::string sci(const WideReal& x) { return x.str(6); }

Check make_check(std::string name, bool ok, std::string detail)
{
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

Check not_applicable(std::string name, std::string why) { return {std::move(name), CheckStatus::not_applicable, std::move(why)}; }

}  // namespace

VerificationReport verify_construction(const ConstructionState& state, const VerificationOptions& options)
{
    const ConstructionConfig& cfg = state.config;
    const int S = state.completed();
    VerificationReport rep;
    rep.unsafe_schedule = cfg.unsafe_schedule;

    const WideReal rho0(cfg.rho0);
    const WideReal C0(cfg.C0);
    const WideReal majorant_prefactor = WideReal(2) * C0 * C0 * C0 * rho0;

    WideReal summability;
    WideReal majorant_sum = 1;
    WideReal rho_sq_sum;
    WideReal rho_sup = max(WideReal(1), rho0);
    std::vector<WideReal> rho_sup_upto{rho_sup};  // sup(1, rho_0..rho_j)
    for (int j = 1; j <= S; ++j) {
        rho_sup = max(rho_sup, state.stages[static_cast<std::size_t>(j)].rho);
        rho_sup_upto.push_back(rho_sup);
    }
    std::size_t non_null = 0;

    for (int n = 0; n <= S; ++n) {
        const StageRecord& rec = state.stages[static_cast<std::size_t>(n)];
        StageReport sr;
        sr.n = n;
        auto [first, last] = ledger_layout(n);
        sr.entries = rec.last - rec.first + 1;

        AmplitudeMap gross = gross_amplitudes(state, last);
        SolenoidalField ledger = residual_from_ledger(state, n);
        sr.telescoping_error = telescoping_error(residual_brute(state, n), ledger, &gross);
        sr.residual_hm3 = sobolev_norm(ledger, -3);
        sr.tail_majorant = tail_majorant(state, n);

        for (std::size_t p = first; p <= last; ++p) {
            BigInt g = state.entry(p).gamma.norm2();
            if (p == first || g < sr.a_min_norm2)
                sr.a_min_norm2 = g;
            if (p == first || g > sr.a_max_norm2)
                sr.a_max_norm2 = g;
        }
        if (n < S) {
            auto [nf, nl] = ledger_layout(n + 1);
            BigInt next_min = state.entry(nf).gamma.norm2();
            for (std::size_t p = nf; p <= nl; ++p)
                next_min = std::min(next_min, state.entry(p).gamma.norm2());
            sr.separated_from_next = sr.a_max_norm2 < next_min;
        }

        sr.rho = rec.rho;
        if (n >= 1) {
            const Frequency& omega = *rec.omega;
            const StageRecord& prev = state.stages[static_cast<std::size_t>(n - 1)];
            sr.geometry_ok = dot(omega, rec.k) == 0 && rec.k.norm2() == rec.N * rec.N * omega.norm2() &&
                             rec.N > 8 && rec.k.norm2() > 64 * prev.k.norm2();
            WideReal kn = sqrt(WideReal(rec.k.norm2()));
            sr.window_min = (sqrt(WideReal(sr.a_min_norm2)) / kn).approx_double();
            sr.window_max = (sqrt(WideReal(sr.a_max_norm2)) / kn).approx_double();

            sr.rho_bound = rho0 / sqrt(sqrt(WideReal(rec.N)));
            const LedgerEntry& target = state.entry(static_cast<std::size_t>(n));
            const StageRecord& src = state.stages[static_cast<std::size_t>(target.stage)];
            sr.c0_omega_witness = sqrt(WideReal(src.k.norm2()) / WideReal(omega.norm2()));
            WideReal denom = WideReal(src.k.norm2()) * src.rho * rho_sup_upto[static_cast<std::size_t>(target.stage)];
            sr.c0_lambda_witness = target.lambda_abs.is_zero() ? WideReal() : target.lambda_abs / denom;
            rep.c0_witness = max(rep.c0_witness, max(sr.c0_omega_witness, sr.c0_lambda_witness));

            summability += rec.rho * rec.rho * WideReal(rec.N);
            majorant_sum += WideReal(8 * n - 1) / sqrt(sqrt(WideReal(rec.N)));
            sr.summability = summability;
            sr.summability_majorant = majorant_prefactor * majorant_sum;
            rho_sq_sum += rec.rho * rec.rho;
            if (!rec.rho.is_zero())
                ++non_null;
        }

        SolenoidalField U = materialize_partial(state, n);
        sr.hm1 = sobolev_norm(U, -1);
        if (U.size() == 1 + 2 * non_null)
            sr.hm1_closed = sqrt((rho0 * rho0 + WideReal(2) * rho_sq_sum) / WideReal(2));
        auto proxies = besov_bmo_proxies(U);
        sr.besov = proxies.besov;
        sr.bmo = proxies.bmo;
        InteractionTableau tab = admissibility_partial_sums(U, options.admissibility_index, options.pair_cutoff);
        sr.admissibility = {tab.rows.size(), tab.total(), tab.leading_term(), tab.final_quarter_tail(), tab.monotone()};
        rep.stages.push_back(std::move(sr));
    }

    if (S >= 1 && !rep.stages[1].tail_majorant.is_zero())
        rep.tail_ratio = rep.stages.back().tail_majorant / rep.stages[1].tail_majorant;

    // Algebraic checks.
    {
        double worst = 0;
        int where = 0;
        for (const auto& s : rep.stages)
            if (s.telescoping_error >= worst) {
                worst = s.telescoping_error;
                where = s.n;
            }
        std::ostringstream d;
        d << "max relative phasor error " << worst << " at stage " << where << " (tolerance "
          << options.telescoping_tolerance << ")";
        rep.checks.push_back(make_check("telescoping", worst <= options.telescoping_tolerance, d.str()));
    }
    {
        bool ok = state.ledger.size() == ledger_layout(S).second;
        std::string bad;
        for (const auto& s : rep.stages)
            if (s.entries != (s.n == 0 ? 1 : static_cast<std::size_t>(8 * s.n - 1))) {
                ok = false;
                bad = " (stage " + std::to_string(s.n) + " holds " + std::to_string(s.entries) + ")";
            }
        rep.checks.push_back(make_check("counts", ok,
                                        std::to_string(state.ledger.size()) + " ledger entries after stage " +
                                            std::to_string(S) + bad));
    }
    {
        bool ok = true;
        std::string bad;
        for (const auto& s : rep.stages)
            if (s.separated_from_next && !*s.separated_from_next) {
                ok = false;
                bad = "max|A_" + std::to_string(s.n) + "| >= min|A_" + std::to_string(s.n + 1) + "|";
            }
        rep.checks.push_back(make_check("separation", ok, ok ? "max|A_n| < min|A_{n+1}| for all stages" : bad));
    }
    {
        bool ok = true;
        for (const auto& e : state.ledger)
            ok = ok && e.beta.is_quarter_turn();
        for (std::size_t n = 1; n < state.stages.size(); ++n)
            ok = ok && state.stages[n].eta.is_quarter_turn();
        ok = ok && state.stages.front().eta.is_quarter_turn();
        rep.checks.push_back(make_check("quarter_turn", ok, "all beta_p and eta_n are multiples of pi/2"));
    }
    {
        bool ok = std::all_of(rep.stages.begin(), rep.stages.end(), [](const StageReport& s) { return s.geometry_ok; });
        rep.checks.push_back(make_check("geometry", ok, "omega.k = 0, |k|^2 = N^2|omega|^2, N > 8, |k_n| > 8|k_{n-1}|"));
    }
    {
        bool ok = true;
        for (const auto& s : rep.stages)
            ok = ok && s.residual_hm3 <= s.tail_majorant;
        rep.checks.push_back(make_check("majorant_bounds_residual", ok, "||residual_n||_{H^-3} <= tail majorant"));
    }
    {
        bool ok = true;
        std::size_t checked = 0;
        for (const auto& s : rep.stages)
            if (s.hm1_closed) {
                ++checked;
                ok = ok && relative_difference(s.hm1, *s.hm1_closed) <= options.closed_form_tolerance;
            }
        rep.checks.push_back(make_check("hm1_closed_form", ok,
                                        std::to_string(checked) + " collision-free stages compared"));
    }

    // Schedule checks.
    const char* na = "unsafe schedule: floor not enforced";
    if (cfg.unsafe_schedule || S == 0) {
        const char* why = S == 0 ? "no completed stage" : na;
        for (const char* name : {"rho_bound", "c0", "summability"})
            rep.checks.push_back(not_applicable(name, why));
    } else {
        bool ok = true;
        for (std::size_t n = 1; n < rep.stages.size(); ++n)
            ok = ok && rep.stages[n].rho <= rep.stages[n].rho_bound;
        rep.checks.push_back(make_check("rho_bound", ok, "rho_n <= rho_0 N_n^{-1/4}"));
        rep.checks.push_back(make_check("c0", rep.c0_witness <= C0,
                                        "minimal witnessing C0 = " + rep.c0_witness.str(25) + ", configured " +
                                            to_string(cfg.C0)));
        ok = true;
        for (std::size_t n = 1; n < rep.stages.size(); ++n)
            ok = ok && rep.stages[n].summability <= rep.stages[n].summability_majorant;
        rep.checks.push_back(make_check("summability", ok,
                                        "sum rho_j^2 |k_j|/|omega_j| <= 2 C0^3 rho0 (1 + sum (8m-1) N_m^{-1/4})"));
    }
    {
        bool ok = true;
        for (std::size_t n = 2; n < rep.stages.size(); ++n)
            ok = ok && rep.stages[n].tail_majorant < rep.stages[n - 1].tail_majorant;
        std::string d = "tail majorant strictly decreasing over stages 1.." + std::to_string(S);
        if (rep.tail_ratio)
            d += ", tail(" + std::to_string(S) + ")/tail(1) = " + sci(*rep.tail_ratio);
        rep.checks.push_back(S >= 2 ? make_check("tail_decreasing", ok, d) : not_applicable("tail_decreasing", "fewer than two stages"));
    }
    return rep;
}

}  // namespace sparsens
