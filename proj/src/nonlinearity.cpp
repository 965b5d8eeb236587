#include "sparsens/nonlinearity.hpp"

#include "sparsens/errors.hpp"
#include "sparsens/norms.hpp"

#include <ostream>
#include <stdexcept>

#ifdef SPARSENS_HAVE_OPENMP
#include <omp.h>
#endif

namespace sparsens {

GeneralField advect(const PhasorMode& A, const PhasorMode& B)
{
    GeneralField out;
    // A . grad B = (a_A cos + b_A sin)(k_A) * (k_A^perp . k_B) (b_B cos - a_B sin)(k_B) k_B^perp
    BigInt c = cross(A.freq, B.freq);
    if (c == 0)
        return out;
    WideReal cw(c);
    WideReal half(0.5);
    WideReal cos_sum = half * cw * (A.a * B.b + A.b * B.a);
    WideReal sin_sum = half * cw * (A.b * B.b - A.a * B.a);
    WideReal cos_diff = half * cw * (A.a * B.b - A.b * B.a);
    WideReal sin_diff = half * cw * (A.a * B.a + A.b * B.b);

    Frequency bp = perp(B.freq);
    WideReal bp1(bp.k1);
    WideReal bp2(bp.k2);
    auto emit = [&](const Frequency& k, const WideReal& cc, const WideReal& ss) {
        if (cc.is_zero() && ss.is_zero())
            return;
        if (k.is_zero())
            throw DegeneracyError("advect produced a mean (zero-frequency) term with nonzero coefficient");
        out.add(k, {cc * bp1, cc * bp2}, {ss * bp1, ss * bp2});
    };
    emit(A.freq + B.freq, cos_sum, sin_sum);
    emit(A.freq - B.freq, cos_diff, sin_diff);
    return out;
}

SolenoidalField interact(const PhasorMode& A, const PhasorMode& B) { return leray_project(advect(A, B)); }

SolenoidalField symmetric_interact(const PhasorMode& A, const PhasorMode& B)
{
    const Frequency& alpha = A.freq;
    const Frequency& beta = B.freq;
    if (alpha == beta || alpha == -beta)
        throw std::invalid_argument("symmetric_interact requires k_A != +-k_B");
    SolenoidalField out;
    BigInt c = cross(alpha, beta);
    BigInt gap = beta.norm2() - alpha.norm2();
    if (c == 0 || gap == 0)
        return out;

    // rho e^{i theta} = a - i b for a phasor (a, b).
    WideReal za_re = A.a, za_im = -A.b;
    WideReal zb_re = B.a, zb_im = -B.b;
    // i * zA * zB and i * zA * conj(zB)
    WideReal prod_re = za_re * zb_re - za_im * zb_im;
    WideReal prod_im = za_re * zb_im + za_im * zb_re;
    WideReal cprod_re = za_re * zb_re + za_im * zb_im;
    WideReal cprod_im = za_im * zb_re - za_re * zb_im;

    WideReal numer = WideReal(c) * WideReal(gap) / WideReal(2);
    auto emit = [&](const Frequency& k, const WideReal& re, const WideReal& im) {
        WideReal coef = numer / WideReal(k.norm2());
        // i (re + i im) = -im + i re; phasor (a, b) = (Re z, -Im z).
        out.add(k, {coef * -im, -(coef * re)});
    };
    emit(alpha + beta, prod_re, prod_im);
    emit(alpha - beta, cprod_re, cprod_im);
    return out;
}

SolenoidalField nonlinear_term(const SolenoidalField& f)
{
    std::vector<PhasorMode> modes = f.modes();
    const std::size_t n = modes.size();
    std::vector<SolenoidalField> pieces(n * n);
    const long long total = static_cast<long long>(n * n);
#ifdef SPARSENS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long idx = 0; idx < total; ++idx) {
        std::size_t i = static_cast<std::size_t>(idx) / n;
        std::size_t j = static_cast<std::size_t>(idx) % n;
        if (i != j)
            pieces[idx] = interact(modes[i], modes[j]);
    }
    // Merge in pair order so the result does not depend on the thread count.
    SolenoidalField out;
    for (const auto& piece : pieces)
        for (const auto& [k, p] : piece.map())
            out.add(k, p);
    return out;
}

WideReal InteractionTableau::leading_term() const
{
    for (const auto& row : rows)
        if (!row.contribution.is_zero())
            return row.contribution;
    return WideReal();
}

WideReal InteractionTableau::final_quarter_tail() const
{
    std::size_t count = (rows.size() + 3) / 4;
    WideReal tail;
    for (std::size_t r = rows.size() - count; r < rows.size(); ++r)
        tail += rows[r].contribution;
    return tail;
}

bool InteractionTableau::monotone() const
{
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].running_sum < rows[r - 1].running_sum)
            return false;
    return true;
}

InteractionTableau admissibility_partial_sums(const SolenoidalField& f, int N, std::size_t cutoff)
{
    if (N < 0)
        throw std::invalid_argument("admissibility index N must be non-negative");
    InteractionTableau t;
    t.sobolev_index = N;
    std::vector<PhasorMode> modes = f.modes();
    t.mode_count = modes.size();

    WideReal running;
    auto visit = [&](std::size_t i, std::size_t j) {
        if (t.rows.size() >= cutoff) {
            t.truncated = true;
            return false;
        }
        SolenoidalField piece = interact(modes[i], modes[j]);
        TableauRow row;
        row.i = i;
        row.j = j;
        for (const auto& [k, p] : piece.map())
            row.outputs.push_back(k);
        row.contribution = sobolev_norm(piece, -static_cast<double>(N));
        running += row.contribution;
        row.running_sum = running;
        t.rows.push_back(std::move(row));
        return true;
    };

    for (std::size_t m = 1; m < modes.size(); ++m) {
        for (std::size_t i = 0; i < m; ++i)
            if (!visit(i, m))
                return t;
        for (std::size_t j = 0; j < m; ++j)
            if (!visit(m, j))
                return t;
    }
    return t;
}

void write_tableau_csv(std::ostream& os, const InteractionTableau& t)
{
    os << "i,j,outputs,contribution,running_sum\n";
    for (const auto& row : t.rows) {
        os << row.i << ',' << row.j << ",\"";
        for (std::size_t q = 0; q < row.outputs.size(); ++q)
            os << (q ? ";" : "") << row.outputs[q].str();
        os << "\"," << row.contribution.str(17) << ',' << row.running_sum.str(17) << '\n';
    }
}

}  // namespace sparsens
