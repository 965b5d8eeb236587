#include "support/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sparsens::testing {

std::vector<DMode> to_doubles(const SolenoidalField& f)
{
    std::vector<DMode> out;
    for (const auto& [k, p] : f.map())
        out.push_back({k.k1.convert_to<long long>(), k.k2.convert_to<long long>(), p.a.to_double(),
                       p.b.to_double()});
    return out;
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double coord(int i, int G) { return two_pi * i / G; }

// Phase table cos/sin(k x_i) for integer k, reduced exactly mod G.
struct Trig {
    std::vector<double> c, s;
    Trig(int G)
    {
        c.resize(G);
        s.resize(G);
        for (int i = 0; i < G; ++i) {
            c[i] = std::cos(coord(i, G));
            s[i] = std::sin(coord(i, G));
        }
    }
    int wrap(long long k, int i, int G) const
    {
        long long r = (k % G) * i % G;
        return static_cast<int>(r < 0 ? r + G : r);
    }
};

}  // namespace

GridField sample(const std::vector<DMode>& modes, int G)
{
    Trig t(G);
    GridField g{G, std::vector<double>(G * G), std::vector<double>(G * G)};
    for (int i1 = 0; i1 < G; ++i1)
        for (int i2 = 0; i2 < G; ++i2) {
            double ux = 0, uy = 0;
            for (const auto& m : modes) {
                int idx = static_cast<int>((t.wrap(m.k1, i1, G) + t.wrap(m.k2, i2, G)) % G);
                double amp = m.a * t.c[idx] + m.b * t.s[idx];
                ux += amp * static_cast<double>(-m.k2);
                uy += amp * static_cast<double>(m.k1);
            }
            g.x[i1 * G + i2] = ux;
            g.y[i1 * G + i2] = uy;
        }
    return g;
}

GridField sample_advection(const std::vector<DMode>& A, const std::vector<DMode>& B, int G)
{
    Trig t(G);
    GridField g{G, std::vector<double>(G * G), std::vector<double>(G * G)};
    for (int i1 = 0; i1 < G; ++i1)
        for (int i2 = 0; i2 < G; ++i2) {
            double ux = 0, uy = 0;
            for (const auto& m : A) {
                int idx = static_cast<int>((t.wrap(m.k1, i1, G) + t.wrap(m.k2, i2, G)) % G);
                double amp = m.a * t.c[idx] + m.b * t.s[idx];
                ux += amp * static_cast<double>(-m.k2);
                uy += amp * static_cast<double>(m.k1);
            }
            // (u . grad) of (a cos + b sin)(k.x) k^perp is (-a sin + b cos)(k.x) (u.k) k^perp
            double rx = 0, ry = 0;
            for (const auto& m : B) {
                int idx = static_cast<int>((t.wrap(m.k1, i1, G) + t.wrap(m.k2, i2, G)) % G);
                double damp = -m.a * t.s[idx] + m.b * t.c[idx];
                double uk = ux * static_cast<double>(m.k1) + uy * static_cast<double>(m.k2);
                rx += damp * uk * static_cast<double>(-m.k2);
                ry += damp * uk * static_cast<double>(m.k1);
            }
            g.x[i1 * G + i2] = rx;
            g.y[i1 * G + i2] = ry;
        }
    return g;
}

GridField sample_advection(const std::vector<DMode>& modes, int G) { return sample_advection(modes, modes, G); }

double mean_dot(const GridField& u, const GridField& v)
{
    double s = 0;
    for (std::size_t i = 0; i < u.x.size(); ++i)
        s += u.x[i] * v.x[i] + u.y[i] * v.y[i];
    return s / static_cast<double>(u.x.size());
}

std::pair<std::array<double, 2>, std::array<double, 2>> general_coefficients(const GridField& g,
                                                                             long long K1,
                                                                             long long K2)
{
    const int G = g.G;
    Trig t(G);
    // cos(K1 x1 + K2 x2) = c1 c2 - s1 s2, sin = s1 c2 + c1 s2; sum over x2 first.
    std::array<double, 2> v{}, w{};
    for (int i1 = 0; i1 < G; ++i1) {
        int j1 = t.wrap(K1, i1, G);
        double c1 = t.c[j1], s1 = t.s[j1];
        double sc[2]{}, ss[2]{};
        for (int i2 = 0; i2 < G; ++i2) {
            int j2 = t.wrap(K2, i2, G);
            double c2 = t.c[j2], s2 = t.s[j2];
            double fx = g.x[i1 * G + i2], fy = g.y[i1 * G + i2];
            sc[0] += fx * c2;
            sc[1] += fy * c2;
            ss[0] += fx * s2;
            ss[1] += fy * s2;
        }
        for (int d = 0; d < 2; ++d) {
            v[d] += c1 * sc[d] - s1 * ss[d];
            w[d] += s1 * sc[d] + c1 * ss[d];
        }
    }
    double scale = 2.0 / (static_cast<double>(G) * G);
    for (int d = 0; d < 2; ++d) {
        v[d] *= scale;
        w[d] *= scale;
    }
    return {v, w};
}

std::pair<double, double> projected_phasor(const GridField& g, long long K1, long long K2)
{
    auto [v, w] = general_coefficients(g, K1, K2);
    double p1 = static_cast<double>(-K2), p2 = static_cast<double>(K1);
    double n2 = p1 * p1 + p2 * p2;
    return {(v[0] * p1 + v[1] * p2) / n2, (w[0] * p1 + w[1] * p2) / n2};
}

double projected_mismatch(const GridField& g, const SolenoidalField& expected,
                          const std::vector<std::pair<long long, long long>>& extra)
{
    std::map<std::pair<long long, long long>, std::pair<double, double>> want;
    for (const auto& m : to_doubles(expected))
        want[{m.k1, m.k2}] = {m.a, m.b};
    for (const auto& k : extra)
        want.try_emplace(k, 0.0, 0.0);
    double scale = 0, err = 0;
    for (const auto& [k, p] : want) {
        auto q = projected_phasor(g, k.first, k.second);
        scale = std::max({scale, std::hypot(p.first, p.second), std::hypot(q.first, q.second)});
        err = std::max(err, std::hypot(p.first - q.first, p.second - q.second));
    }
    return scale == 0 ? err : err / scale;
}

}  // namespace sparsens::testing
