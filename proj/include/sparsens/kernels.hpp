#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace sparsens {

/// Canonical lattice points with |k| <= M, numbered in (|k|^2, k1, k2) order,
/// plus a (2M+1)^2 lookup from raw lattice points to slots.
class SlotTable {
public:
    explicit SlotTable(int M);

    int radius() const { return M_; }
    std::size_t size() const { return freq_.size(); }
    const std::array<int, 2>& freq(std::size_t slot) const { return freq_[slot]; }
    /// Slot of q when q is canonical with |q| <= M, otherwise -1.
    int canonical_slot(int q1, int q2) const
    {
        if (q1 < -M_ || q1 > M_ || q2 < -M_ || q2 > M_)
            return -1;
        return lookup_[static_cast<std::size_t>((q1 + M_) * (2 * M_ + 1) + (q2 + M_))];
    }
    /// Slot of canonical(q) and whether q had to be flipped; slot -1 outside the ball.
    std::pair<int, bool> slot_of(int q1, int q2) const
    {
        int s = canonical_slot(q1, q2);
        if (s >= 0)
            return {s, false};
        return {canonical_slot(-q1, -q2), true};
    }

private:
    int M_;
    std::vector<std::array<int, 2>> freq_;
    std::vector<int> lookup_;
};

/// Slots with nonzero amplitude (|a| + |b| > prune), ascending.
std::vector<int> active_slots(const std::vector<double>& a, const std::vector<double>& b, double prune = 0.0);

/// out = sum over ordered pairs (i, j), i != j, of active modes of P(u_i . grad u_j),
/// truncated to the table's ball. Reference implementation: scatter in (i, j) order.
void pair_convolution_serial(const SlotTable& table, const std::vector<double>& a, const std::vector<double>& b,
                             const std::vector<int>& active, std::vector<double>& out_a,
                             std::vector<double>& out_b);

/// Same sum computed per output slot in parallel; each slot accumulates its
/// contributions in the serial (i, j) order, so results are bit-identical.
void pair_convolution_parallel(const SlotTable& table, const std::vector<double>& a, const std::vector<double>& b,
                               const std::vector<int>& active, std::vector<double>& out_a,
                               std::vector<double>& out_b);

/// Output slots that receive at least one contribution.
std::vector<int> reachable_slots(const SlotTable& table, const std::vector<int>& active);

/// Thread count used by the parallel kernels (1 without OpenMP).
int kernel_threads();
void set_kernel_threads(int n);

}  // namespace sparsens
