#include "sparsens/field.hpp"

#include "sparsens/errors.hpp"

#include <cmath>

namespace sparsens {

PhasorMode PhasorMode::from_polar(Frequency k, const WideReal& rho, const Phase& theta)
{
    return {std::move(k), rho * theta.cos(), -(rho * theta.sin())};
}

double PhasorMode::theta() const
{
    // a = rho cos(theta), b = -rho sin(theta); compare via a common scale so
    // that amplitudes outside double range still give a sensible angle.
    WideReal scale = max(abs(a), abs(b));
    if (scale.is_zero())
        return 0.0;
    return std::atan2((-b / scale).to_double(), (a / scale).to_double());
}

PhasorMode canonicalize_mode(const Frequency& k, const WideReal& rho, const Phase& theta)
{
    if (k.is_zero())
        throw InvalidFrequency("canonicalize_mode: zero frequency");
    if (k.is_canonical())
        return PhasorMode::from_polar(k, rho, theta);
    return PhasorMode::from_polar(-k, rho, Phase::pi() - theta);
}

Phasor canonical_phasor(const Frequency& k, const Phasor& p)
{
    if (k.is_zero())
        throw InvalidFrequency("canonical_phasor: zero frequency");
    if (k.is_canonical())
        return p;
    // cos(k.x) stays, sin(k.x) flips, and k^perp flips.
    return {-p.a, p.b};
}

void SolenoidalField::add(const Frequency& k, const Phasor& p)
{
    if (k.is_zero())
        throw InvalidFrequency("solenoidal field cannot hold a zero frequency");
    if (p.is_zero())
        return;
    Frequency key = canonical(k);
    Phasor q = canonical_phasor(k, p);
    auto [it, inserted] = modes_.try_emplace(std::move(key), q);
    if (!inserted) {
        it->second.a += q.a;
        it->second.b += q.b;
        if (it->second.is_zero())
            modes_.erase(it);
    }
}

void SolenoidalField::add_polar(const Frequency& k, const WideReal& rho, const Phase& theta)
{
    add(PhasorMode::from_polar(k, rho, theta));
}

const Phasor* SolenoidalField::find(const Frequency& canonical_k) const
{
    auto it = modes_.find(canonical_k);
    return it == modes_.end() ? nullptr : &it->second;
}

std::vector<PhasorMode> SolenoidalField::modes() const
{
    std::vector<PhasorMode> out;
    out.reserve(modes_.size());
    for (const auto& [k, p] : modes_)
        out.push_back({k, p.a, p.b});
    return out;
}

SolenoidalField SolenoidalField::scaled(const WideReal& c) const
{
    SolenoidalField out;
    for (const auto& [k, p] : modes_)
        out.add(k, {p.a * c, p.b * c});
    return out;
}

void GeneralField::add(const Frequency& k, const Vec2& v, const Vec2& w)
{
    if (k.is_zero())
        throw InvalidFrequency("general field cannot hold a zero frequency");
    Frequency key = canonical(k);
    Vec2 ws = w;
    if (!k.is_canonical())
        ws = {-w.x, -w.y};
    auto [it, inserted] = modes_.try_emplace(std::move(key), v, ws);
    if (!inserted) {
        auto& [cv, cw] = it->second;
        cv.x += v.x;
        cv.y += v.y;
        cw.x += ws.x;
        cw.y += ws.y;
        if (cv.is_zero() && cw.is_zero())
            modes_.erase(it);
    }
}

std::vector<GeneralMode> GeneralField::modes() const
{
    std::vector<GeneralMode> out;
    out.reserve(modes_.size());
    for (const auto& [k, vw] : modes_)
        out.push_back({k, vw.first, vw.second});
    return out;
}

SolenoidalField superpose(std::span<const SolenoidalField> fields)
{
    SolenoidalField out;
    for (const auto& f : fields)
        for (const auto& [k, p] : f.map())
            out.add(k, p);
    return out;
}

SolenoidalField superpose(const SolenoidalField& a, const SolenoidalField& b)
{
    SolenoidalField out = a;
    for (const auto& [k, p] : b.map())
        out.add(k, p);
    return out;
}

SolenoidalField negate(const SolenoidalField& f) { return f.scaled(WideReal(-1)); }

SolenoidalField laplacian(const SolenoidalField& f)
{
    SolenoidalField out;
    for (const auto& [k, p] : f.map()) {
        WideReal factor = -WideReal(k.norm2());
        out.add(k, {p.a * factor, p.b * factor});
    }
    return out;
}

namespace {

/// v . K^perp, flushing results that are pure cancellation noise to exact zero.
WideReal project_component(const Vec2& v, const WideReal& kp1, const WideReal& kp2)
{
    WideReal t1 = v.x * kp1;
    WideReal t2 = v.y * kp2;
    WideReal d = t1 + t2;
    WideReal noise = ldexp(abs(t1) + abs(t2), -static_cast<std::int64_t>(WideReal::precision_bits) + 8);
    if (abs(d) <= noise)
        return WideReal();
    return d;
}

}  // namespace

SolenoidalField leray_project(const GeneralField& f)
{
    SolenoidalField out;
    for (const auto& [k, vw] : f.map()) {
        Frequency kp = perp(k);
        WideReal kp1(kp.k1);
        WideReal kp2(kp.k2);
        WideReal n2(k.norm2());
        WideReal a = project_component(vw.first, kp1, kp2) / n2;
        WideReal b = project_component(vw.second, kp1, kp2) / n2;
        out.add(k, {a, b});
    }
    return out;
}

GeneralField to_general(const SolenoidalField& f)
{
    GeneralField out;
    for (const auto& [k, p] : f.map()) {
        Frequency kp = perp(k);
        WideReal kp1(kp.k1);
        WideReal kp2(kp.k2);
        out.add(k, {p.a * kp1, p.a * kp2}, {p.b * kp1, p.b * kp2});
    }
    return out;
}

namespace {

double frequency_component(const BigInt& v)
{
    // Beyond 2^53 the phase k.x is meaningless in double precision.
    if (boost::multiprecision::abs(v) > (BigInt(1) << 53))
        throw RangeError("frequency component " + v.str() + " too large to evaluate");
    return static_cast<double>(v);
}

}  // namespace

std::array<double, 2> evaluate(const SolenoidalField& f, std::array<double, 2> x)
{
    std::array<double, 2> out{0.0, 0.0};
    for (const auto& [k, p] : f.map()) {
        double k1 = frequency_component(k.k1);
        double k2 = frequency_component(k.k2);
        double phase = k1 * x[0] + k2 * x[1];
        double s = p.a.to_double() * std::cos(phase) + p.b.to_double() * std::sin(phase);
        out[0] += s * -k2;
        out[1] += s * k1;
    }
    return out;
}

std::array<double, 2> evaluate(const GeneralField& f, std::array<double, 2> x)
{
    std::array<double, 2> out{0.0, 0.0};
    for (const auto& [k, vw] : f.map()) {
        double phase = frequency_component(k.k1) * x[0] + frequency_component(k.k2) * x[1];
        double c = std::cos(phase);
        double s = std::sin(phase);
        out[0] += c * vw.first.x.to_double() + s * vw.second.x.to_double();
        out[1] += c * vw.first.y.to_double() + s * vw.second.y.to_double();
    }
    return out;
}

}  // namespace sparsens
