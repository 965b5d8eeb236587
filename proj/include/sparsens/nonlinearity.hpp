#pragma once

#include "sparsens/field.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsens {

/// A . grad B for two solenoidal modes, expanded by product-to-sum into
/// general modes at k_A + k_B and k_A - k_B (canonicalized).
GeneralField advect(const PhasorMode& A, const PhasorMode& B);

/// P(A . grad B): at most two solenoidal modes.
SolenoidalField interact(const PhasorMode& A, const PhasorMode& B);

/// P(A . grad B + B . grad A) from the closed symmetric formula. Requires
/// k_A != +-k_B (std::invalid_argument otherwise); |k_A| = |k_B| gives an empty field.
SolenoidalField symmetric_interact(const PhasorMode& A, const PhasorMode& B);

/// P(u . grad u) = sum over ordered mode pairs of interact, phasor-merged.
SolenoidalField nonlinear_term(const SolenoidalField& f);

struct TableauRow {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<Frequency> outputs;
    /// ||P(u_i . grad u_j)||_{H^-N}
    WideReal contribution;
    WideReal running_sum;
};

/// Ordered pairs of distinct modes enumerated by increasing max(i, j), then
/// lexicographically; partial sums of the admissibility series.
struct InteractionTableau {
    int sobolev_index = 0;
    std::string order = "max-index-then-lexicographic";
    std::size_t mode_count = 0;
    bool truncated = false;
    std::vector<TableauRow> rows;

    WideReal total() const { return rows.empty() ? WideReal() : rows.back().running_sum; }
    /// First nonzero contribution in enumeration order (0 if none).
    WideReal leading_term() const;
    /// Sum of the contributions in the last quarter of the rows (rounded up).
    WideReal final_quarter_tail() const;
    bool monotone() const;
};

InteractionTableau admissibility_partial_sums(const SolenoidalField& f, int N,
                                              std::size_t cutoff = static_cast<std::size_t>(-1));

/// CSV: i,j,outputs,contribution,running_sum.
void write_tableau_csv(std::ostream& os, const InteractionTableau& t);

}  // namespace sparsens
