#include "msf/triangular_seed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msf/error.hpp"

namespace msf {
namespace {

// Lower Cholesky factor of one node, written into `out` (upper part zeroed).
void node_cholesky(ConstMatrixView s, MatrixView out, double pivot_floor, int node)
{
    const Eigen::Index r = s.rows();
    out.setZero();
    for (Eigen::Index k = 0; k < r; ++k) {
        double pivot = s(k, k).real();
        for (Eigen::Index i = 0; i < k; ++i) pivot -= std::norm(out(k, i));
        if (!(pivot > pivot_floor)) {
            ErrorContext ctx;
            ctx.node = node;
            ctx.index = static_cast<long>(k);
            throw Error(ErrorCode::NotPositiveDefinite,
                        "Cholesky pivot " + std::to_string(pivot) + " at index " + std::to_string(k) +
                            ", node " + std::to_string(node),
                        ctx);
        }
        const double d = std::sqrt(pivot);
        out(k, k) = d;
        for (Eigen::Index i = k + 1; i < r; ++i) {
            Complex acc = s(i, k);
            for (Eigen::Index l = 0; l < k; ++l) acc -= out(i, l) * std::conj(out(k, l));
            out(i, k) = acc / d;
        }
    }
}

}  // namespace

TriangularSeed triangular_seed(const GridSamples& density, const SeedOptions& options)
{
    const int r = density.dim();
    const int ng = density.size();

    double scale = 0.0;
    double trace_scale = 0.0;
    for (int j = 0; j < ng; ++j) {
        scale = std::max(scale, max_abs(density.node(j)));
        trace_scale = std::max(trace_scale, density.node(j).diagonal().real().sum() / r);
    }
    for (int j = 0; j < ng; ++j) {
        const auto s = density.node(j);
        const double asym = max_abs(s - s.adjoint());
        if (!(asym <= options.hermitian_tol * scale)) {
            ErrorContext ctx;
            ctx.node = j;
            throw Error(ErrorCode::NotHermitian,
                        "Hermitian residual " + std::to_string(asym) + " at node " + std::to_string(j), ctx);
        }
    }

    TriangularSeed seed{GridSamples(r, ng), {}};
    const double pivot_floor = options.pivot_floor * trace_scale;
    for (int j = 0; j < ng; ++j) node_cholesky(density.node(j), seed.q.node(j), pivot_floor, j);

    seed.diagonal.reserve(r);
    std::vector<double> d(ng);
    for (int m = 0; m < r; ++m) {
        for (int j = 0; j < ng; ++j) d[j] = std::norm(seed.q.node(j)(m, m));
        if (!(paley_wiener_check(d) >= options.paley_wiener_floor)) {
            ErrorContext ctx;
            ctx.index = m;
            throw Error(ErrorCode::PaleyWienerFail,
                        "log-integral of diagonal " + std::to_string(m) + " below floor", ctx);
        }
        ScalarFactor f = scalar_factorize(d);
        for (int j = 0; j < ng; ++j) {
            auto q = seed.q.node(j);
            const Complex rotation = f.samples[j] / q(m, m).real();
            for (int i = m + 1; i < r; ++i) q(i, m) *= rotation;
            q(m, m) = f.samples[j];
        }
        seed.diagonal.push_back(std::move(f));
    }
    return seed;
}

}  // namespace msf
