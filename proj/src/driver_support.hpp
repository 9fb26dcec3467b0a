#pragma once

#include <chrono>
#include <span>

#include "msf/factor.hpp"
#include "msf/paraunitary.hpp"

namespace msf::detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

StepRecord make_step(const ParaunitaryFactor& factor, int stage, int block, double seconds);

/// q(row0.., col0..col0+u.dim()) <- q(row0.., col0..) * u(z_j) at every node.
void apply_columns(GridSamples& q, const GridSamples& u, int row0, int col0);

/// Largest entry modulus in positions (i, k) whose block column lies strictly
/// right of the block row, for square blocks of the given size.
double upper_block_max(const GridSamples& q, int block_size);

/// Largest entry modulus above the diagonal in columns first_column and later.
double upper_max_from(const GridSamples& q, int first_column);

/// Anti-analytic residual of a diagonal block, relative to its largest coefficient.
double block_analytic_residual(const GridSamples& q, int start, int size);

/// Fills c1 and c2 of the report.
void finish_metrics(FactorReport& report, const GridSamples& density, const GridSamples& factor);

}  // namespace msf::detail
