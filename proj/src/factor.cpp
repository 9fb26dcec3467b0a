#include "msf/factor.hpp"

#include <algorithm>

#include "driver_support.hpp"
#include "msf/verify_bench.hpp"

namespace msf {

int tail_order(std::span<const LaurentMatrixPoly> zetas, double eps_tail, int cap)
{
    double scale = 0.0;
    int depth = 0;
    for (const auto& z : zetas) {
        scale = std::max(scale, z.max_coeff_abs());
        depth = std::max(depth, z.n_neg());
    }
    if (scale == 0.0) return 0;
    const double threshold = eps_tail * scale;
    int order = 0;
    for (int k = depth; k >= 1 && order == 0; --k) {
        for (const auto& z : zetas) {
            if (z.has_power(-k) && max_abs(z.coeff(-k)) >= threshold) {
                order = k;
                break;
            }
        }
    }
    return std::min(order, cap);
}

int order_cap(const FactorConfig& config, int grid)
{
    const int cap = grid / 2;
    return config.max_order > 0 ? std::min(config.max_order, cap) : cap;
}

namespace detail {

StepRecord make_step(const ParaunitaryFactor& factor, int stage, int block, double seconds)
{
    StepRecord step;
    step.stage = stage;
    step.block = block;
    step.order = factor.order;
    step.paraunitary_residual = factor.paraunitary_residual;
    step.lemma_deviation = factor.lemma_deviation;
    step.det_deviation = factor.det_deviation;
    step.analytic_residual = factor.analytic_residual;
    step.seconds = seconds;
    return step;
}

void apply_columns(GridSamples& q, const GridSamples& u, int row0, int col0)
{
    const int rows = q.dim() - row0;
    const int width = u.dim();
    for (int j = 0; j < q.size(); ++j) {
        auto target = q.node(j).block(row0, col0, rows, width);
        const RowMatrix updated = target * u.node(j);
        target = updated;
    }
}

double upper_block_max(const GridSamples& q, int block_size)
{
    double worst = 0.0;
    const int r = q.dim();
    for (int j = 0; j < q.size(); ++j) {
        const auto node = q.node(j);
        for (int i = 0; i < r; ++i)
            for (int k = (i / block_size + 1) * block_size; k < r; ++k) worst = std::max(worst, std::abs(node(i, k)));
    }
    return worst;
}

double upper_max_from(const GridSamples& q, int first_column)
{
    double worst = 0.0;
    for (int j = 0; j < q.size(); ++j) {
        const auto node = q.node(j);
        for (int k = first_column; k < q.dim(); ++k)
            for (int i = 0; i < k; ++i) worst = std::max(worst, std::abs(node(i, k)));
    }
    return worst;
}

double block_analytic_residual(const GridSamples& q, int start, int size)
{
    const LaurentMatrixPoly c = all_coefficients(q.block(start, start, size));
    const double scale = c.max_coeff_abs();
    return scale == 0.0 ? 0.0 : c.max_negative_abs() / scale;
}

void finish_metrics(FactorReport& report, const GridSamples& density, const GridSamples& factor)
{
    report.c1 = metric_c1(density, factor);
    report.c2 = metric_c2(factor);
}

}  // namespace detail
}  // namespace msf
