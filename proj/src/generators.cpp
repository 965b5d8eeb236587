#include "sparsens/generators.hpp"

#include "sparsens/errors.hpp"


#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace sparsens {

std::vector<Frequency> level_frequencies(const LacunarySpec& spec)
{
    if (spec.frequency_rule == FrequencyRule::explicit_list)
        return spec.frequencies;
    std::vector<Frequency> ks;
    Frequency k = spec.base;
    for (std::size_t j = 0; j < spec.count; ++j) {
        ks.push_back(k);
        Frequency next = spec.gap_ratio * k;
        if (spec.frequency_rule == FrequencyRule::rotated)
            next = next + perp(k);
        k = next;
    }
    return ks;
}

std::vector<WideReal> level_amplitudes(const LacunarySpec& spec)
{
    std::size_t n = level_frequencies(spec).size();
    std::vector<WideReal> rho;
    if (spec.amplitude_rule == AmplitudeRule::explicit_list) {
        if (spec.amplitudes.size() != n)
            throw SpecError("amplitude list has " + std::to_string(spec.amplitudes.size()) +
                            " entries for " + std::to_string(n) + " levels");
        for (const auto& r : spec.amplitudes)
            rho.emplace_back(r);
        return rho;
    }
    Rational r = spec.rho_first;
    for (std::size_t j = 0; j < n; ++j) {
        rho.emplace_back(r);
        r *= spec.rho_ratio;
    }
    return rho;
}

std::vector<Frequency> level_omegas(const ResonantSpec& spec)
{
    std::vector<Frequency> ks = level_frequencies(spec.levels);
    if (spec.omega_rule == OmegaRule::explicit_list) {
        if (spec.omegas.size() != ks.size())
            throw SpecError("omega list has " + std::to_string(spec.omegas.size()) + " entries for " +
                            std::to_string(ks.size()) + " levels");
        return spec.omegas;
    }
    if (spec.omega_rule == OmegaRule::follow_levels) {
        if (spec.levels.frequency_rule == FrequencyRule::explicit_list)
            throw SpecError("omega rule follow_levels needs a scaled or rotated frequency rule");
        LacunarySpec shadow = spec.levels;
        shadow.base = spec.omega_base;
        return level_frequencies(shadow);
    }
    std::vector<Frequency> out;
    for (const auto& k : ks) {
        if (k.is_zero())
            throw SpecError("zero frequency in resonant spec");
        BigInt g = boost::multiprecision::gcd(k.k1, k.k2);
        Frequency p = perp(k);
        out.push_back(canonical(Frequency(p.k1 / g, p.k2 / g)));
    }
    return out;
}

namespace {

Phase phase_at(const std::vector<Phase>& phases, std::size_t j, const char* what)
{
    if (phases.empty())
        return Phase();
    if (j >= phases.size())
        throw SpecError(std::string(what) + " list is shorter than the level count");
    return phases[j];
}

// |a| > 8|b| exactly.
bool dominates(const Frequency& a, const Frequency& b) { return a.norm2() > 64 * b.norm2(); }

void check_levels(const std::vector<Frequency>& ks)
{
    if (ks.empty())
        throw SpecError("spec has no levels");
    for (std::size_t j = 0; j < ks.size(); ++j) {
        if (ks[j].is_zero())
            throw SpecError("zero frequency at level " + std::to_string(j));
        if (j + 1 < ks.size() && !dominates(ks[j + 1], ks[j]))
            throw SpecError("gap condition |k_{j+1}| > 8|k_j| fails at level " + std::to_string(j + 1));
    }
}

}  // namespace

SolenoidalField lacunary_field(const LacunarySpec& spec)
{
    std::vector<Frequency> ks = level_frequencies(spec);
    check_levels(ks);
    std::vector<WideReal> rho = level_amplitudes(spec);
    SolenoidalField f;
    for (std::size_t j = 0; j < ks.size(); ++j)
        f.add_polar(ks[j], rho[j], phase_at(spec.phases, j, "phase"));
    return f;
}

SolenoidalField resonant_field(const ResonantSpec& spec)
{
    std::vector<Frequency> ks = level_frequencies(spec.levels);
    check_levels(ks);
    std::vector<Frequency> omegas = level_omegas(spec);
    std::vector<WideReal> rho = level_amplitudes(spec.levels);
    SolenoidalField f;
    for (std::size_t j = 0; j < ks.size(); ++j) {
        if (dot(omegas[j], ks[j]) != 0)
            throw SpecError("omega_j . k_j != 0 at level " + std::to_string(j));
        if (omegas[j].is_zero() || !dominates(ks[j], omegas[j]))
            throw SpecError("|k_j| > 8|omega_j| fails at level " + std::to_string(j));
        f.add_polar(ks[j], rho[j], phase_at(spec.levels.phases, j, "phase"));
        f.add_polar(ks[j] + omegas[j], rho[j], phase_at(spec.etas, j, "eta"));
    }
    return f;
}

WideReal geometric_tail(const std::vector<WideReal>& terms)
{
    if (terms.size() < 2 || terms.back().is_zero())
        return WideReal();
    const WideReal& last = terms.back();
    const WideReal& prev = terms[terms.size() - 2];
    if (prev.is_zero())
        return WideReal(std::numeric_limits<double>::infinity());
    WideReal q = last / prev;
    if (q >= WideReal(1))
        return WideReal(std::numeric_limits<double>::infinity());
    return last * q / (WideReal(1) - q);
}

namespace {

FamilyReport base_report(const std::vector<Frequency>& ks, const std::vector<WideReal>& rho, int N)
{
    FamilyReport r;
    r.sobolev_index = N;
    std::vector<WideReal> terms;
    for (std::size_t j = 0; j < ks.size(); ++j) {
        LevelCheck c;
        c.j = j;
        c.k = ks[j];
        if (ks[j].is_zero()) {
            r.flags.push_back("zero frequency at level " + std::to_string(j));
            r.levels.push_back(c);
            continue;
        }
        if (j + 1 < ks.size()) {
            c.gap_ratio = sqrt(WideReal(ks[j + 1].norm2()) / WideReal(ks[j].norm2())).approx_double();
            c.gap_ok = dominates(ks[j + 1], ks[j]);
            if (!c.gap_ok)
                r.flags.push_back("gap condition fails between levels " + std::to_string(j) + " and " +
                                  std::to_string(j + 1));
        }
        WideReal t = rho[j] * rho[j] * pow(WideReal(ks[j].norm2()), static_cast<std::int64_t>(-N));
        terms.push_back(t);
        r.decay_sum += t;
        r.levels.push_back(c);
    }
    r.decay_tail = geometric_tail(terms);
    return r;
}

}  // namespace

FamilyReport family_conditions_report(const LacunarySpec& spec, int N)
{
    return base_report(level_frequencies(spec), level_amplitudes(spec), N);
}

FamilyReport family_conditions_report(const ResonantSpec& spec, int N)
{
    std::vector<Frequency> ks = level_frequencies(spec.levels);
    std::vector<WideReal> rho = level_amplitudes(spec.levels);
    FamilyReport r = base_report(ks, rho, N);
    std::vector<Frequency> omegas = level_omegas(spec);
    std::vector<WideReal> terms;
    WideReal sum;
    for (std::size_t j = 0; j < ks.size(); ++j) {
        LevelCheck& c = r.levels[j];
        c.omega = omegas[j];
        c.orthogonal = dot(omegas[j], ks[j]) == 0;
        c.separated = !omegas[j].is_zero() && dominates(ks[j], omegas[j]);
        if (!c.orthogonal)
            r.flags.push_back("omega not orthogonal to k at level " + std::to_string(j));
        if (!c.separated) {
            r.flags.push_back("|k_j| > 8|omega_j| fails at level " + std::to_string(j));
            continue;
        }
        WideReal t = rho[j] * rho[j] * sqrt(WideReal(ks[j].norm2()) / WideReal(omegas[j].norm2()));
        terms.push_back(t);
        sum += t;
    }
    r.summability_sum = sum;
    r.summability_tail = geometric_tail(terms);
    return r;
}

namespace {

std::vector<Frequency> draw_frequencies(std::mt19937_64& rng, const RandomFieldSpec& spec)
{
    if (spec.radius < 1)
        throw SpecError("random field radius must be positive");
    long long r = spec.radius;
    // canonical lattice points in the ball
    std::size_t available = 0;
    for (long long a = 0; a <= r; ++a)
        for (long long b = -r; b <= r; ++b)
            if (a * a + b * b <= r * r && Frequency(a, b).is_canonical())
                ++available;
    if (spec.count > available)
        throw SpecError("random field asks for more modes than the ball holds");
    std::uniform_int_distribution<long long> d(-r, r);
    std::set<Frequency, FrequencyLess> seen;
    std::vector<Frequency> out;
    while (out.size() < spec.count) {
        Frequency k(d(rng), d(rng));
        if (k.is_zero() || k.norm2() > BigInt(r * r))
            continue;
        k = canonical(k);
        if (seen.insert(k).second)
            out.push_back(k);
    }
    return out;
}

}  // namespace

SolenoidalField random_solenoidal(const RandomFieldSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::vector<Frequency> ks = draw_frequencies(rng, spec);
    std::uniform_real_distribution<double> amp(0.5, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    SolenoidalField f;
    double scale = 1.0;
    for (const auto& k : ks) {
        double rho = scale * amp(rng);
        double t = ang(rng);
        f.add(k, {rho * std::cos(t), -rho * std::sin(t)});
        scale *= spec.decay;
    }
    return f;
}

GeneralField random_general(const RandomFieldSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::vector<Frequency> ks = draw_frequencies(rng, spec);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GeneralField g;
    double scale = 1.0;
    for (const auto& k : ks) {
        g.add(k, {scale * u(rng), scale * u(rng)}, {scale * u(rng), scale * u(rng)});
        scale *= spec.decay;
    }
    return g;
}

}  // namespace sparsens
