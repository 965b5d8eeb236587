#include "sparsens/evolution.hpp"

#include "sparsens/errors.hpp"
#include "sparsens/norms.hpp"

#include <cmath>
#include <string>

namespace sparsens {

namespace {

double norm2(const std::array<int, 2>& k) { return static_cast<double>(k[0] * k[0] + k[1] * k[1]); }

std::vector<double> heat_factors(const SlotTable& t, double h)
{
    std::vector<double> e(t.size());
    for (std::size_t s = 0; s < t.size(); ++s)
        e[s] = std::exp(-norm2(t.freq(s)) * h);
    return e;
}

}  // namespace

std::size_t SpectralState::active_count() const { return active_slots(a, b, prune).size(); }

SolenoidalField SpectralState::field() const
{
    SolenoidalField f;
    for (std::size_t s = 0; s < a.size(); ++s)
        if (a[s] != 0 || b[s] != 0)
            f.add(Frequency(freq(s)[0], freq(s)[1]), Phasor{WideReal(a[s]), WideReal(b[s])});
    return f;
}

SpectralState empty_state(int M, double dt)
{
    SpectralState s;
    s.table = std::make_shared<const SlotTable>(M);
    s.dt = dt;
    s.a.assign(s.table->size(), 0.0);
    s.b.assign(s.table->size(), 0.0);
    return s;
}

SpectralState galerkin_truncate(const SolenoidalField& f, int M, double dt)
{
    SpectralState s = empty_state(M, dt);
    WideReal dropped;
    const BigInt M2 = BigInt(M) * M;
    for (const auto& [k, p] : f.map()) {
        if (k.norm2() > M2) {
            dropped += (p.a * p.a + p.b * p.b) / WideReal(2);
            ++s.truncation.dropped;
            continue;
        }
        int slot = s.table->canonical_slot(static_cast<int>(k.k1), static_cast<int>(k.k2));
        double a = p.a.to_double();
        double b = p.b.to_double();
        s.a[static_cast<std::size_t>(slot)] = a;
        s.b[static_cast<std::size_t>(slot)] = b;
        ++s.truncation.kept;
    }
    s.truncation.dropped_hm1 = sqrt(dropped).approx_double();
    return s;
}

void nonlinear_rhs(const SpectralState& s, const std::vector<double>& a, const std::vector<double>& b,
                   std::vector<double>& out_a, std::vector<double>& out_b)
{
    std::vector<int> active = active_slots(a, b, s.prune);
    // both kernels give identical bits; the gather only pays off with several threads
    if (s.kernel == KernelKind::serial || kernel_threads() == 1)
        pair_convolution_serial(*s.table, a, b, active, out_a, out_b);
    else
        pair_convolution_parallel(*s.table, a, b, active, out_a, out_b);
    for (std::size_t i = 0; i < out_a.size(); ++i) {
        out_a[i] = -out_a[i];
        out_b[i] = -out_b[i];
    }
}

SpectralState step(const SpectralState& s)
{
    if (!(s.dt > 0))
        throw std::invalid_argument("time step must be positive");
    const double h = s.dt;
    const std::size_t n = s.slots();
    const std::vector<double> E = heat_factors(*s.table, h);
    const std::vector<double> E2 = heat_factors(*s.table, h / 2);

    std::vector<double> k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    std::vector<double> ua(n), ub(n);

    nonlinear_rhs(s, s.a, s.b, k1a, k1b);
    for (std::size_t i = 0; i < n; ++i) {
        ua[i] = E2[i] * (s.a[i] + h / 2 * k1a[i]);
        ub[i] = E2[i] * (s.b[i] + h / 2 * k1b[i]);
    }
    nonlinear_rhs(s, ua, ub, k2a, k2b);
    for (std::size_t i = 0; i < n; ++i) {
        ua[i] = E2[i] * s.a[i] + h / 2 * k2a[i];
        ub[i] = E2[i] * s.b[i] + h / 2 * k2b[i];
    }
    nonlinear_rhs(s, ua, ub, k3a, k3b);
    for (std::size_t i = 0; i < n; ++i) {
        ua[i] = E[i] * s.a[i] + h * E2[i] * k3a[i];
        ub[i] = E[i] * s.b[i] + h * E2[i] * k3b[i];
    }
    nonlinear_rhs(s, ua, ub, k4a, k4b);

    SpectralState out = s;
    for (std::size_t i = 0; i < n; ++i) {
        out.a[i] = E[i] * s.a[i] + h / 6 * (E[i] * k1a[i] + 2 * E2[i] * (k2a[i] + k3a[i]) + k4a[i]);
        out.b[i] = E[i] * s.b[i] + h / 6 * (E[i] * k1b[i] + 2 * E2[i] * (k2b[i] + k3b[i]) + k4b[i]);
        if (!std::isfinite(out.a[i]) || !std::isfinite(out.b[i]))
            throw DivergenceError("non-finite amplitude at t = " + std::to_string(s.t + h), s.t + h);
    }
    out.t = s.t + h;
    return out;
}

double hm1_distance(const SpectralState& x, const SpectralState& y)
{
    double sum = 0;
    for (std::size_t i = 0; i < x.slots(); ++i) {
        double da = x.a[i] - y.a[i], db = x.b[i] - y.b[i];
        sum += da * da + db * db;
    }
    return std::sqrt(sum / 2);
}

Sample observe(const SpectralState& s, const SpectralState& initial)
{
    Sample out;
    out.t = s.t;
    double hm1 = 0;
    for (std::size_t i = 0; i < s.slots(); ++i) {
        double r2 = s.a[i] * s.a[i] + s.b[i] * s.b[i];
        if (r2 == 0)
            continue;
        double q = norm2(s.freq(i));
        hm1 += r2;
        out.energy += r2 * q;
        out.enstrophy += r2 * q * q;
        out.sup_bound += std::sqrt(r2 * q);
    }
    out.energy /= 2;
    out.enstrophy /= 2;
    out.hm1 = std::sqrt(hm1 / 2);
    out.distance = hm1_distance(s, initial);
    return out;
}

Trajectory evolve(const SpectralState& s, double T, const EvolveOptions& opts)
{
    if (!(T > 0))
        throw std::invalid_argument("final time must be positive");
    if (!(s.dt > 0))
        throw std::invalid_argument("time step must be positive");
    const int every = std::max(1, opts.observe_every);
    auto steps = static_cast<std::size_t>(std::ceil(T / s.dt * (1 - 1e-12)));
    steps = std::max<std::size_t>(steps, 1);

    Trajectory tr;
    tr.steps = steps;
    tr.step_size = T / static_cast<double>(steps);
    SpectralState cur = s;
    cur.dt = tr.step_size;
    const double t0 = s.t;

    auto record = [&](const SpectralState& st) {
        Sample smp = observe(st, s);
        tr.samples.push_back(smp);
        for (const auto& ob : opts.observers)
            ob(st, smp);
    };
    record(cur);
    for (std::size_t i = 1; i <= steps; ++i) {
        cur = step(cur);
        cur.t = t0 + static_cast<double>(i) * tr.step_size;
        if (i % static_cast<std::size_t>(every) == 0 || i == steps)
            record(cur);
    }
    cur.dt = s.dt;
    tr.final_state = std::move(cur);
    return tr;
}

double energy_audit(const Trajectory& tr)
{
    const auto& v = tr.samples;
    if (v.size() < 2)
        return 0;
    const std::size_t n = v.size() - 1;
    const double h = (v.back().t - v.front().t) / static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i)
        if (std::abs(v[i].t - v[i - 1].t - h) > 1e-9 * std::max(1.0, h))
            throw std::invalid_argument("energy audit needs uniformly spaced samples");

    auto Z = [&](std::size_t i) { return v[i].enstrophy; };
    double integral = 0;
    std::size_t simpson_end = n;
    if (n == 1) {
        integral = h / 2 * (Z(0) + Z(1));
        simpson_end = 0;
    } else if (n % 2 == 1) {
        // Simpson 3/8 on the last three intervals
        simpson_end = n - 3;
        integral += 3 * h / 8 * (Z(n - 3) + 3 * Z(n - 2) + 3 * Z(n - 1) + Z(n));
    }
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
        integral += h / 3 * (Z(i) + 4 * Z(i + 1) + Z(i + 2));

    const double e0 = v.front().energy;
    if (e0 == 0)
        return 0;
    return std::abs(v.back().energy / 2 - e0 / 2 + integral) / e0;
}

SteadyComparison compare_steady(const SolenoidalField& f, const Trajectory& tr)
{
    SteadyComparison out;
    bool first = true;
    for (const auto& smp : tr.samples) {
        out.max_distance = std::max(out.max_distance, smp.distance);
        if (&smp == &tr.samples.front())
            continue;
        out.min_distance = first ? smp.distance : std::min(out.min_distance, smp.distance);
        first = false;
    }
    const double norm = sobolev_norm(f, -1).approx_double();
    if (norm > 0 && !tr.samples.empty())
        out.decay_ratio = tr.samples.back().hm1 / norm;
    return out;
}

}  // namespace sparsens
