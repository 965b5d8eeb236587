#pragma once

#include "sparsens/frequency.hpp"
#include "sparsens/phase.hpp"
#include "sparsens/wide_real.hpp"

#include <array>
#include <map>
#include <span>
#include <vector>

namespace sparsens {

/// Coefficients (a, b) of (a cos(k.x) + b sin(k.x)) k^perp.
struct Phasor {
    WideReal a;
    WideReal b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    /// rho = sqrt(a^2 + b^2).
    WideReal magnitude() const { return hypot(a, b); }
};

/// Divergence-free mode (a cos(k.x) + b sin(k.x)) k^perp = rho cos(k.x + theta) k^perp.
struct PhasorMode {
    Frequency freq;
    WideReal a;
    WideReal b;

    /// rho cos(k.x + theta) k^perp, i.e. a = rho cos(theta), b = -rho sin(theta).
    static PhasorMode from_polar(Frequency k, const WideReal& rho, const Phase& theta);

    WideReal rho() const { return hypot(a, b); }
    /// Polar angle in radians, in (-pi, pi].
    double theta() const;
    Phasor phasor() const { return {a, b}; }
};

struct Vec2 {
    WideReal x;
    WideReal y;

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

/// cos(k.x) v + sin(k.x) w, not necessarily divergence-free.
struct GeneralMode {
    Frequency freq;
    Vec2 v;
    Vec2 w;
};

/// Mode rho cos(k.x + theta) k^perp re-expressed at the canonical frequency.
/// Non-canonical k maps to -k with phase pi - theta. Throws InvalidFrequency for k = 0.
PhasorMode canonicalize_mode(const Frequency& k, const WideReal& rho, const Phase& theta);

/// Re-expresses the phasor (a, b) given at k on canonical(k).
Phasor canonical_phasor(const Frequency& k, const Phasor& p);

/// Finite sum of solenoidal modes keyed by canonical frequency.
class SolenoidalField {
public:
    using Map = std::map<Frequency, Phasor, FrequencyLess>;

    SolenoidalField() = default;

    /// Adds (a, b) at k, canonicalizing k first. Modes that cancel exactly are dropped.
    void add(const Frequency& k, const Phasor& p);
    void add(const PhasorMode& m) { add(m.freq, m.phasor()); }
    void add_polar(const Frequency& k, const WideReal& rho, const Phase& theta);

    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }
    const Map& map() const { return modes_; }
    const Phasor* find(const Frequency& canonical_k) const;

    /// Modes in storage order.
    std::vector<PhasorMode> modes() const;

    SolenoidalField scaled(const WideReal& c) const;

private:
    Map modes_;
};

/// Finite sum of general modes keyed by canonical frequency.
class GeneralField {
public:
    using Map = std::map<Frequency, std::pair<Vec2, Vec2>, FrequencyLess>;

    void add(const Frequency& k, const Vec2& v, const Vec2& w);
    void add(const GeneralMode& m) { add(m.freq, m.v, m.w); }

    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }
    const Map& map() const { return modes_; }
    std::vector<GeneralMode> modes() const;

private:
    Map modes_;
};

SolenoidalField superpose(std::span<const SolenoidalField> fields);
SolenoidalField superpose(const SolenoidalField& a, const SolenoidalField& b);
SolenoidalField negate(const SolenoidalField& f);

/// Multiplies each mode by -|k|^2.
SolenoidalField laplacian(const SolenoidalField& f);

/// Orthogonal projection of each frequency's vector amplitudes onto k^perp.
SolenoidalField leray_project(const GeneralField& f);

/// Same field written as general modes (v = a k^perp, w = b k^perp).
GeneralField to_general(const SolenoidalField& f);

/// Pointwise value in double precision. Throws RangeError if an amplitude
/// or frequency does not fit a double.
std::array<double, 2> evaluate(const SolenoidalField& f, std::array<double, 2> x);
std::array<double, 2> evaluate(const GeneralField& f, std::array<double, 2> x);

}  // namespace sparsens
