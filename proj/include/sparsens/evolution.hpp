#pragma once

#include "sparsens/field.hpp"
#include "sparsens/kernels.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace sparsens {

enum class KernelKind { serial, parallel };

struct TruncationInfo {
    std::size_t kept = 0;
    std::size_t dropped = 0;
    /// H^-1 norm of the discarded modes.
    double dropped_hm1 = 0;
};

/// Galerkin state on the canonical half ball |k| <= M, phasors in double precision.
/// Copies share the slot table; amplitudes are value-semantic.
struct SpectralState {
    std::shared_ptr<const SlotTable> table;
    double t = 0;
    double dt = 1e-3;
    std::vector<double> a;
    std::vector<double> b;
    KernelKind kernel = KernelKind::parallel;
    /// Modes with |a| + |b| <= prune are skipped by the pair convolution.
    double prune = 0;
    TruncationInfo truncation;

    int radius() const { return table->radius(); }
    std::size_t slots() const { return a.size(); }
    std::size_t active_count() const;
    const std::array<int, 2>& freq(std::size_t slot) const { return table->freq(slot); }
    /// Amplitudes back as an exact field (zero modes omitted).
    SolenoidalField field() const;
};

SpectralState empty_state(int M, double dt);
SpectralState galerkin_truncate(const SolenoidalField& f, int M, double dt = 1e-3);

/// -P(v . grad v) truncated to the ball.
void nonlinear_rhs(const SpectralState& s, const std::vector<double>& a, const std::vector<double>& b,
                   std::vector<double>& out_a, std::vector<double>& out_b);

/// One integrating-factor RK4 step of size s.dt.
SpectralState step(const SpectralState& s);

struct Sample {
    double t = 0;
    double energy = 0;     // ||v||^2
    double enstrophy = 0;  // ||grad v||^2
    double hm1 = 0;
    double sup_bound = 0;  // sum rho |k|
    double distance = 0;   // ||v - v(0)||_{H^-1}
};

Sample observe(const SpectralState& s, const SpectralState& initial);

struct EvolveOptions {
    int observe_every = 1;
    std::vector<std::function<void(const SpectralState&, const Sample&)>> observers;
};

struct Trajectory {
    std::vector<Sample> samples;
    SpectralState final_state;
    std::size_t steps = 0;
    double step_size = 0;
};

/// Steps to time T with ceil(T/dt) equal steps. Throws DivergenceError on non-finite amplitudes.
Trajectory evolve(const SpectralState& s, double T, const EvolveOptions& opts = {});

/// |E(T)/2 - E(0)/2 + int_0^T Z dt| / E(0) from the recorded samples.
/// Needs uniformly spaced samples; quadrature is composite Simpson.
double energy_audit(const Trajectory& tr);

struct SteadyComparison {
    double max_distance = 0;
    double min_distance = 0;  // over t > 0
    double decay_ratio = 0;   // ||v(T)||_{H^-1} / ||f||_{H^-1}
};

SteadyComparison compare_steady(const SolenoidalField& f, const Trajectory& tr);

/// Per-slot H^-1 distance between two states on the same table.
double hm1_distance(const SpectralState& x, const SpectralState& y);

}  // namespace sparsens
