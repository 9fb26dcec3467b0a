#include "msf/jl_classic.hpp"

#include <string>
#include <vector>

#include "driver_support.hpp"
#include "msf/error.hpp"
#include "msf/verify_bench.hpp"

namespace msf {
namespace {

ParaunitaryFactor run_stage(const GridSamples& q, const TriangularSeed& seed, int m, const FactorConfig& config,
                            int cap)
{
    const int row = m - 1;
    std::vector<LaurentMatrixPoly> zetas;
    zetas.reserve(row);
    for (int j = 0; j < row; ++j) zetas.push_back(all_coefficients(q.block(row, j, 1)));

    const int order = tail_order(zetas, config.eps_tail, cap);
    ParaunitaryFactor none;
    none.blocks = m;
    none.order = 0;
    if (order == 0) return none;

    CompletionInput input;
    input.block_size = 1;
    input.blocks = m;
    input.order = order;
    for (auto& z : zetas) input.zetas.push_back(z.with_band(order, 0));
    const auto& coeffs = seed.diagonal[row].coeffs;
    input.f = LaurentMatrixPoly(1, 0, order);
    for (int n = 0; n <= order && n < static_cast<int>(coeffs.size()); ++n) input.f.coeff(n)(0, 0) = coeffs[n];
    return complete(input, config.tolerances);
}

}  // namespace

FactorResult classic_factorize(const GridSamples& density, const FactorConfig& config)
{
    const auto start = detail::Clock::now();
    const int r = density.dim();
    const int ng = density.size();

    FactorResult result;
    FactorReport& report = result.report;
    report.algorithm = "classic";
    report.dim = r;
    report.padded_dim = r;
    report.grid = ng;
    report.config = config;

    TriangularSeed seed = triangular_seed(density, config.seed);
    report.seed_seconds = detail::seconds_since(start);

    const auto procedure_start = detail::Clock::now();
    const int cap = order_cap(config, ng);
    GridSamples& q = seed.q;
    for (int m = 2; m <= r; ++m) {
        const auto stage_start = detail::Clock::now();
        try {
            const ParaunitaryFactor u = run_stage(q, seed, m, config, cap);
            if (u.order > 0) {
                detail::apply_columns(q, evaluate_on_grid(u.u, ng), 0, 0);
                if (config.keep_history) result.history.push_back(u.u);
            }
            report.steps.push_back(detail::make_step(u, m, -1, detail::seconds_since(stage_start)));
        } catch (const Error& e) {
            ErrorContext ctx = e.context();
            ctx.stage = m;
            throw Error(ErrorCode::StageFailed,
                        "stage " + std::to_string(m) + ": " + std::string(to_string(e.code())) + ": " + e.detail(),
                        ctx);
        }
        if (config.check_invariants) {
            InvariantRecord inv;
            inv.stage = m;
            inv.analytic_residual = detail::block_analytic_residual(q, 0, m);
            inv.conservation = metric_c1(density, q);
            inv.upper_zero = detail::upper_max_from(q, m);
            report.invariants.push_back(inv);
        }
    }
    report.procedure_seconds = detail::seconds_since(procedure_start);
    report.total_seconds = detail::seconds_since(start);

    detail::finish_metrics(report, density, q);
    result.factor = std::move(q);
    return result;
}

}  // namespace msf
