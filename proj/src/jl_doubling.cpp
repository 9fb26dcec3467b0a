#include "msf/jl_doubling.hpp"

#include <string>
#include <vector>

#include "driver_support.hpp"
#include "msf/error.hpp"
#include "msf/jl_classic.hpp"
#include "msf/verify_bench.hpp"
#include "parallel.hpp"

namespace msf {
namespace {

int padded_size(int r)
{
    int p = 1;
    while (p < r) p *= 2;
    return p;
}

struct SuperblockOutcome {
    StepRecord step;
    LaurentMatrixPoly u;
};

// Steps 1-3 for superblock k at block size M. Writes only columns
// [2Mk, 2Mk + 2M) of q and reads nothing outside them.
SuperblockOutcome run_superblock(GridSamples& q, int M, int k, const FactorConfig& config, int cap)
{
    const auto start = detail::Clock::now();
    const int c0 = 2 * M * k;
    const LaurentMatrixPoly zeta = all_coefficients(q.block(c0 + M, c0, M));
    const int order = tail_order(std::span(&zeta, 1), config.eps_tail, cap);

    SuperblockOutcome out;
    if (order == 0) {
        out.step.stage = M;
        out.step.block = k;
        out.step.seconds = detail::seconds_since(start);
        return out;
    }

    CompletionInput input;
    input.block_size = M;
    input.blocks = 2;
    input.order = order;
    input.zetas.push_back(zeta.with_band(order, 0));
    input.f = all_coefficients(q.block(c0 + M, c0 + M, M)).with_band(0, order);
    ParaunitaryFactor u = complete(input, config.tolerances);

    detail::apply_columns(q, evaluate_on_grid(u.u, q.size()), c0, c0);
    out.step = detail::make_step(u, M, k, detail::seconds_since(start));
    out.u = std::move(u.u);
    return out;
}

}  // namespace

PaddedDensity pad_to_pow2(const GridSamples& density)
{
    const int r = density.dim();
    const int p = padded_size(r);
    if (p == r) return {density, 0};
    PaddedDensity out{GridSamples(p, density.size()), p - r};
    for (int j = 0; j < density.size(); ++j) {
        auto node = out.density.node(j);
        node.setIdentity();
        node.topLeftCorner(r, r) = density.node(j);
    }
    return out;
}

GridSamples strip_padding(const GridSamples& factor, int dim)
{
    if (dim == factor.dim()) return factor;
    return factor.block(0, 0, dim);
}

FactorResult doubling_factorize(const GridSamples& density, const FactorConfig& config)
{
    const auto start = detail::Clock::now();
    const int r = density.dim();
    const int ng = density.size();
    const PaddedDensity padded = pad_to_pow2(density);
    const int dim = padded.density.dim();

    FactorResult result;
    FactorReport& report = result.report;
    report.algorithm = "doubling";
    report.dim = r;
    report.padded_dim = dim;
    report.grid = ng;
    report.config = config;

    TriangularSeed seed = triangular_seed(padded.density, config.seed);
    report.seed_seconds = detail::seconds_since(start);

    const auto procedure_start = detail::Clock::now();
    const int cap = order_cap(config, ng);
    const int threads = detail::resolve_threads(config.threads);
    GridSamples& q = seed.q;
    for (int M = 1; 2 * M <= dim; M *= 2) {
        const auto level_start = detail::Clock::now();
        const int superblocks = dim / (2 * M);
        std::vector<SuperblockOutcome> outcomes(superblocks);
        detail::parallel_for(superblocks, threads, [&](int k) {
            try {
                outcomes[k] = run_superblock(q, M, k, config, cap);
            } catch (const Error& e) {
                ErrorContext ctx = e.context();
                ctx.level = M;
                ctx.block = k;
                throw Error(ErrorCode::LevelFailed,
                            "level " + std::to_string(M) + ", superblock " + std::to_string(k) + ": " +
                                std::string(to_string(e.code())) + ": " + e.detail(),
                            ctx);
            }
        });
        for (auto& o : outcomes) {
            report.steps.push_back(o.step);
            if (config.keep_history && o.step.order > 0) result.history.push_back(std::move(o.u));
        }
        report.level_seconds.push_back(detail::seconds_since(level_start));

        if (config.check_invariants) {
            InvariantRecord inv;
            inv.stage = M;
            for (int k = 0; k < superblocks; ++k)
                inv.analytic_residual =
                    std::max(inv.analytic_residual, detail::block_analytic_residual(q, 2 * M * k, 2 * M));
            inv.conservation = metric_c1(padded.density, q);
            inv.upper_zero = detail::upper_block_max(q, 2 * M);
            report.invariants.push_back(inv);
        }
    }
    report.procedure_seconds = detail::seconds_since(procedure_start);

    result.factor = strip_padding(q, r);
    report.total_seconds = detail::seconds_since(start);
    detail::finish_metrics(report, density, result.factor);
    return result;
}

UnitaryGap constant_unitary_gap(const GridSamples& a, const GridSamples& b)
{
    if (a.dim() != b.dim() || a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "factors differ in dimension or grid size");
    UnitaryGap gap;
    const CMatrix w0 = CMatrix(a.node(0)).partialPivLu().solve(CMatrix(b.node(0)));
    for (int j = 1; j < a.size(); ++j) {
        const CMatrix w = CMatrix(a.node(j)).partialPivLu().solve(CMatrix(b.node(j)));
        gap.deviation = std::max(gap.deviation, max_abs(w - w0));
    }
    gap.unitarity = max_abs(w0 * w0.adjoint() - CMatrix::Identity(a.dim(), a.dim()));
    return gap;
}

double equivalence_to_classic(const GridSamples& density, const FactorConfig& config)
{
    const FactorResult classic = classic_factorize(density, config);
    const FactorResult doubling = doubling_factorize(density, config);
    return constant_unitary_gap(classic.factor, doubling.factor).deviation;
}

}  // namespace msf
