#include "sparsens/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef SPARSENS_HAVE_OPENMP
#include <omp.h>
#endif

namespace sparsens {

SlotTable::SlotTable(int M) : M_(M)
{
    if (M < 1)
        throw std::invalid_argument("truncation radius must be at least 1");
    for (int k1 = 0; k1 <= M; ++k1)
        for (int k2 = -M; k2 <= M; ++k2)
            if ((k1 > 0 || k2 > 0) && k1 * k1 + k2 * k2 <= M * M)
                freq_.push_back({k1, k2});
    std::sort(freq_.begin(), freq_.end(), [](const auto& x, const auto& y) {
        int nx = x[0] * x[0] + x[1] * x[1], ny = y[0] * y[0] + y[1] * y[1];
        return nx != ny ? nx < ny : x < y;
    });
    lookup_.assign(static_cast<std::size_t>((2 * M + 1) * (2 * M + 1)), -1);
    for (std::size_t s = 0; s < freq_.size(); ++s)
        lookup_[static_cast<std::size_t>((freq_[s][0] + M) * (2 * M + 1) + (freq_[s][1] + M))] = static_cast<int>(s);
}

std::vector<int> active_slots(const std::vector<double>& a, const std::vector<double>& b, double prune)
{
    std::vector<int> out;
    for (std::size_t s = 0; s < a.size(); ++s)
        if (std::abs(a[s]) + std::abs(b[s]) > prune)
            out.push_back(static_cast<int>(s));
    return out;
}

namespace {

struct Term {
    int slot = -1;
    double a = 0;
    double b = 0;
};

// Sum and difference routes of P(A . grad B) for A at slot i, B at slot j.
// Both kernels evaluate the same expressions, so their results agree bit for bit.
inline Term sum_term(const SlotTable& t, const std::vector<double>& a, const std::vector<double>& b, int i, int j)
{
    const auto& kA = t.freq(static_cast<std::size_t>(i));
    const auto& kB = t.freq(static_cast<std::size_t>(j));
    const int c = kA[0] * kB[1] - kA[1] * kB[0];
    const int s1 = kA[0] + kB[0], s2 = kA[1] + kB[1];
    const int slot = t.canonical_slot(s1, s2);
    if (c == 0 || slot < 0)
        return {};
    const double aA = a[static_cast<std::size_t>(i)], bA = b[static_cast<std::size_t>(i)];
    const double aB = a[static_cast<std::size_t>(j)], bB = b[static_cast<std::size_t>(j)];
    const double hc = 0.5 * static_cast<double>(c);
    const double f = static_cast<double>(kB[0] * s1 + kB[1] * s2) / static_cast<double>(s1 * s1 + s2 * s2);
    return {slot, hc * (aA * bB + bA * aB) * f, hc * (bA * bB - aA * aB) * f};
}

inline Term diff_term(const SlotTable& t, const std::vector<double>& a, const std::vector<double>& b, int i, int j)
{
    const auto& kA = t.freq(static_cast<std::size_t>(i));
    const auto& kB = t.freq(static_cast<std::size_t>(j));
    const int c = kA[0] * kB[1] - kA[1] * kB[0];
    const int d1 = kA[0] - kB[0], d2 = kA[1] - kB[1];
    const auto [slot, flip] = t.slot_of(d1, d2);
    if (c == 0 || slot < 0)
        return {};
    const double aA = a[static_cast<std::size_t>(i)], bA = b[static_cast<std::size_t>(i)];
    const double aB = a[static_cast<std::size_t>(j)], bB = b[static_cast<std::size_t>(j)];
    const double hc = 0.5 * static_cast<double>(c);
    const double f = static_cast<double>(kB[0] * d1 + kB[1] * d2) / static_cast<double>(d1 * d1 + d2 * d2);
    const double ca = hc * (aA * bB - bA * aB) * f;
    return {slot, flip ? -ca : ca, hc * (aA * aB + bA * bB) * f};
}

}  // namespace

void pair_convolution_serial(const SlotTable& table, const std::vector<double>& a, const std::vector<double>& b,
                             const std::vector<int>& active, std::vector<double>& out_a, std::vector<double>& out_b)
{
    out_a.assign(table.size(), 0.0);
    out_b.assign(table.size(), 0.0);
    for (int i : active)
        for (int j : active) {
            if (i == j)
                continue;
            for (const Term& term : {sum_term(table, a, b, i, j), diff_term(table, a, b, i, j)})
                if (term.slot >= 0) {
                    out_a[static_cast<std::size_t>(term.slot)] += term.a;
                    out_b[static_cast<std::size_t>(term.slot)] += term.b;
                }
        }
}

std::vector<int> reachable_slots(const SlotTable& table, const std::vector<int>& active)
{
    std::vector<char> hit(table.size(), 0);
    for (int i : active)
        for (int j : active) {
            if (i == j)
                continue;
            const auto& kA = table.freq(static_cast<std::size_t>(i));
            const auto& kB = table.freq(static_cast<std::size_t>(j));
            if (kA[0] * kB[1] == kA[1] * kB[0])
                continue;
            if (int s = table.canonical_slot(kA[0] + kB[0], kA[1] + kB[1]); s >= 0)
                hit[static_cast<std::size_t>(s)] = 1;
            if (int s = table.slot_of(kA[0] - kB[0], kA[1] - kB[1]).first; s >= 0)
                hit[static_cast<std::size_t>(s)] = 1;
        }
    std::vector<int> out;
    for (std::size_t s = 0; s < hit.size(); ++s)
        if (hit[s])
            out.push_back(static_cast<int>(s));
    return out;
}

void pair_convolution_parallel(const SlotTable& table, const std::vector<double>& a, const std::vector<double>& b,
                               const std::vector<int>& active, std::vector<double>& out_a,
                               std::vector<double>& out_b)
{
    out_a.assign(table.size(), 0.0);
    out_b.assign(table.size(), 0.0);
    std::vector<char> is_active(table.size(), 0);
    for (int s : active)
        is_active[static_cast<std::size_t>(s)] = 1;
    const std::vector<int> targets = reachable_slots(table, active);
    const long long nt = static_cast<long long>(targets.size());

#ifdef SPARSENS_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(kernel_threads())
#endif
    for (long long ti = 0; ti < nt; ++ti) {
        const int K = targets[static_cast<std::size_t>(ti)];
        const auto& k = table.freq(static_cast<std::size_t>(K));
        double acc_a = 0, acc_b = 0;
        for (int i : active) {
            const auto& kA = table.freq(static_cast<std::size_t>(i));
            // B = K - A reaches K through the sum; B = A - K or A + K through the difference
            std::array<std::pair<int, bool>, 3> cand{{{table.canonical_slot(k[0] - kA[0], k[1] - kA[1]), true},
                                                      {table.canonical_slot(kA[0] - k[0], kA[1] - k[1]), false},
                                                      {table.canonical_slot(kA[0] + k[0], kA[1] + k[1]), false}}};
            std::sort(cand.begin(), cand.end());
            for (auto [j, via_sum] : cand) {
                if (j < 0 || j == i || !is_active[static_cast<std::size_t>(j)])
                    continue;
                Term term = via_sum ? sum_term(table, a, b, i, j) : diff_term(table, a, b, i, j);
                if (term.slot == K) {
                    acc_a += term.a;
                    acc_b += term.b;
                }
            }
        }
        out_a[static_cast<std::size_t>(K)] = acc_a;
        out_b[static_cast<std::size_t>(K)] = acc_b;
    }
}

namespace {
int g_threads = 0;
}

int kernel_threads()
{
#ifdef SPARSENS_HAVE_OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void set_kernel_threads(int n) { g_threads = n; }

}  // namespace sparsens
