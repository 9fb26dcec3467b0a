#include "msf/paraunitary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "msf/error.hpp"

namespace msf {
namespace {

// Dense Gamma^H * W is used below this dimension; the blockwise loop above it.
constexpr int dense_gamma_limit = 2048;

int grid_for_band(long band) { return next_pow2(band); }

struct FormalInverse {
    std::vector<CMatrix> terms;  // B_0, B_1, ... with f(z) B(z) = I
};

// Taylor coefficients 0..count-1 of f^{-1}.
FormalInverse formal_inverse(const LaurentMatrixPoly& f, int count, const CompletionTolerances& tol)
{
    const int dim = f.dim();
    Eigen::PartialPivLU<CMatrix> lead(CMatrix(f.coeff(0)));
    FormalInverse inv;
    inv.terms.reserve(count);
    inv.terms.push_back(lead.inverse());
    const double base = std::max(max_abs(inv.terms[0]), 1e-300);
    CMatrix acc(dim, dim);
    for (int n = 1; n < count; ++n) {
        acc.setZero();
        for (int k = 1; k <= std::min(n, f.n_pos()); ++k) acc.noalias() += f.coeff(k) * inv.terms[n - k];
        inv.terms.push_back(-(inv.terms[0] * acc));
        if (!(max_abs(inv.terms.back()) <= tol.inverse_growth * base))
            throw Error(ErrorCode::FNearSingular,
                        "formal inverse of f grows past " + std::to_string(tol.inverse_growth) +
                            " at term " + std::to_string(n) + "; f is not invertible in the disc");
    }
    return inv;
}

// Strictly negative part of f^{-1} zeta, order <= N.
LaurentMatrixPoly minus_part(const FormalInverse& inv, const LaurentMatrixPoly& zeta, int order)
{
    const int dim = zeta.dim();
    LaurentMatrixPoly out(dim, order, 0);
    for (int k = 1; k <= order; ++k) {
        auto dst = out.coeff(-k);
        CMatrix acc = CMatrix::Zero(dim, dim);
        for (int n = 0; n + k <= zeta.n_neg(); ++n) acc.noalias() += inv.terms[n] * zeta.coeff(-(n + k));
        dst = acc;
    }
    return out;
}

// Analytic part of f^{-1} zeta, degrees 0..N.
LaurentMatrixPoly plus_part(const FormalInverse& inv, const LaurentMatrixPoly& zeta, int order)
{
    const int dim = zeta.dim();
    LaurentMatrixPoly out(dim, 0, order);
    for (int k = 0; k <= order; ++k) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        for (int l = 0; l <= zeta.n_neg(); ++l) acc.noalias() += inv.terms[k + l] * zeta.coeff(-l);
        out.coeff(k) = acc;
    }
    return out;
}

void require(bool ok, ErrorCode code, const std::string& what)
{
    if (!ok) throw Error(code, what);
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const CompletionInput& input, const CompletionTolerances& tol)
{
    const int M = input.block_size;
    const int N = input.order;
    require(M >= 1, ErrorCode::InvalidArgument, "block size must be positive");
    require(input.blocks >= 2, ErrorCode::InvalidArgument, "completion needs at least two block columns");
    require(N >= 0, ErrorCode::InvalidArgument, "truncation order must be non-negative");
    require(static_cast<int>(input.zetas.size()) == input.blocks - 1, ErrorCode::DimensionMismatch,
            "expected " + std::to_string(input.blocks - 1) + " zeta blocks, got " +
                std::to_string(input.zetas.size()));
    for (const auto& z : input.zetas) {
        require(z.dim() == M, ErrorCode::DimensionMismatch, "zeta block has wrong size");
        require(z.n_pos() == 0 && z.n_neg() <= N, ErrorCode::InvalidArgument,
                "zeta must be anti-analytic of order <= N");
    }
    require(input.f.dim() == M, ErrorCode::DimensionMismatch, "f block has wrong size");
    require(input.f.n_neg() == 0 && input.f.n_pos() <= N, ErrorCode::InvalidArgument,
            "f must be analytic of degree <= N");

    Eigen::JacobiSVD<CMatrix> svd(CMatrix(input.f.coeff(0)));
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > tol.sigma_floor * sv(0)) || sv(0) == 0.0)
        throw Error(ErrorCode::FNearSingular,
                    "C_0{f} is numerically singular (sigma_min/sigma_max = " +
                        std::to_string(sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0) + ")");
}

SplitParts split_f(const CompletionInput& input, const CompletionTolerances& tol)
{
    validate(input, tol);
    const int N = input.order;
    const FormalInverse inv = formal_inverse(input.f, 2 * N + 1, tol);
    SplitParts parts{input.f, {}, {}};
    for (const auto& z : input.zetas) {
        parts.minus.push_back(minus_part(inv, z, N));
        parts.plus.push_back(plus_part(inv, z, N));
    }
    return parts;
}

// ---------------------------------------------------------------------------
// HankelSystem

HankelSystem::HankelSystem(int block_size, int order, std::span<const LaurentMatrixPoly> minus_parts)
    : block_size_(block_size), order_(order)
{
    const int M = block_size;
    const int D = M * (order + 1);
    const int count = static_cast<int>(minus_parts.size());
    require(M >= 1 && order >= 0 && count >= 1, ErrorCode::InvalidArgument, "empty Hankel system");

    stacked_ = CMatrix::Zero(D, count * M);
    for (int j = 0; j < count; ++j) {
        const auto& z = minus_parts[j];
        require(z.dim() == M && z.n_pos() == 0 && z.n_neg() <= order, ErrorCode::InvalidArgument,
                "minus part must be anti-analytic of order <= N");
        for (int n = 0; n <= z.n_neg(); ++n) stacked_.block(n * M, j * M, M, M) = z.coeff(-n);
    }

    // (Gamma Gamma^H)(a, c) = sum_{t >= 0} P(a + t, c + t) with P = G G^H, so
    // each block is its own P block plus the block one step down the diagonal.
    solve_matrix_ = CMatrix::Zero(D, D);
    solve_matrix_.selfadjointView<Eigen::Lower>().rankUpdate(stacked_);
    for (int a = order - 1; a >= 0; --a)
        for (int c = 0; c <= a; ++c)
            solve_matrix_.block(a * M, c * M, M, M) += solve_matrix_.block((a + 1) * M, (c + 1) * M, M, M);
    // The diagonal blocks' strictly-upper halves were not propagated; rebuild
    // them from the lower halves so every diagonal block is Hermitian.
    for (int a = 0; a <= order; ++a) {
        auto blk = solve_matrix_.block(a * M, a * M, M, M);
        CMatrix lower = blk.triangularView<Eigen::Lower>();
        blk = lower;
        blk.triangularView<Eigen::StrictlyUpper>() = lower.adjoint().triangularView<Eigen::StrictlyUpper>();
    }
    solve_matrix_.diagonal().array() += 1.0;
}

CMatrix HankelSystem::gamma(int j, int n) const
{
    const int M = block_size_;
    if (n < 0 || n > order_) return CMatrix::Zero(M, M);
    return stacked_.block(n * M, j * M, M, M);
}

CMatrix HankelSystem::gamma_matrix(int j) const
{
    const int M = block_size_;
    const int D = dimension();
    CMatrix g = CMatrix::Zero(D, D);
    for (int a = 0; a <= order_; ++a)
        for (int b = 0; a + b <= order_; ++b) g.block(a * M, b * M, M, M) = gamma(j, a + b);
    return g;
}

CMatrix HankelSystem::solve_matrix_full() const
{
    CMatrix full = solve_matrix_.selfadjointView<Eigen::Lower>();
    return full;
}

CMatrix HankelSystem::right_hand_sides() const
{
    const int M = block_size_;
    const int count = zeta_count();
    CMatrix rhs = CMatrix::Zero(dimension(), (count + 1) * M);
    rhs.leftCols(count * M) = -stacked_;
    rhs.block(0, count * M, M, M).setIdentity();
    return rhs;
}

CMatrix HankelSystem::apply_gamma_adjoint(int j, const CMatrix& w) const
{
    const int M = block_size_;
    const int D = dimension();
    if (D <= dense_gamma_limit) return gamma_matrix(j).adjoint() * w;

    // out(a) = sum_b gamma_{a+b}^H w(b)
    CMatrix out = CMatrix::Zero(D, w.cols());
    for (int t = 0; t <= order_; ++t) {
        const CMatrix gh = stacked_.block(t * M, j * M, M, M).adjoint();
        for (int a = 0; a <= t; ++a)
            out.middleRows(a * M, M).noalias() += gh * w.middleRows((t - a) * M, M);
    }
    return out;
}

// ---------------------------------------------------------------------------

LaurentMatrixPoly solve_solutions(const HankelSystem& system, int blocks)
{
    const int M = system.block_size();
    const int N = system.order();
    const int count = system.zeta_count();
    require(blocks == count + 1, ErrorCode::DimensionMismatch, "block count does not match Hankel data");

    Eigen::LLT<CMatrix, Eigen::Lower> llt(system.solve_matrix());
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::SolveFailed, "reduced Hankel system is not positive definite");
    const CMatrix w = llt.solve(system.right_hand_sides());

    const int dim = blocks * M;
    LaurentMatrixPoly u(dim, N, N);
    for (int i = 0; i < count; ++i) {
        CMatrix y = system.apply_gamma_adjoint(i, w);
        y.block(0, i * M, M, M) += CMatrix::Identity(M, M);
        for (int n = 0; n <= N; ++n) u.coeff(n).block(i * M, 0, M, dim) = y.middleRows(n * M, M);
    }
    for (int n = 0; n <= N; ++n) u.coeff(-n).block(count * M, 0, M, dim) = w.middleRows(n * M, M);
    return u;
}

// ---------------------------------------------------------------------------

double lemma_deviation(const LaurentMatrixPoly& u)
{
    const GridSamples g = evaluate_on_grid(u, grid_for_band(4L * (u.n_neg() + u.n_pos()) + 2));
    std::vector<CMatrix> k(g.size());
    CMatrix mean = CMatrix::Zero(u.dim(), u.dim());
    for (int j = 0; j < g.size(); ++j) {
        k[j] = g.node(j).adjoint() * g.node(j);
        mean += k[j];
    }
    mean /= static_cast<double>(g.size());
    double dev = 0.0;
    for (const auto& kj : k) dev = std::max(dev, max_abs(kj - mean));
    return dev / std::max(max_abs(mean), 1e-300);
}

ParaunitaryFactor normalize(const LaurentMatrixPoly& u_raw, int block_size, int blocks,
                            const CompletionTolerances& tol)
{
    const int M = block_size;
    const int dim = u_raw.dim();
    require(dim == M * blocks, ErrorCode::DimensionMismatch, "U does not have m x m blocks of size M");

    ParaunitaryFactor out;
    out.block_size = M;
    out.blocks = blocks;
    out.order = std::max(u_raw.n_neg(), u_raw.n_pos());

    // K = U~ U is the constant coefficient of the product.
    CMatrix k = CMatrix::Zero(dim, dim);
    for (int n = -u_raw.n_neg(); n <= u_raw.n_pos(); ++n) k.noalias() += u_raw.coeff(n).adjoint() * u_raw.coeff(n);
    out.lemma_deviation = lemma_deviation(u_raw);
    if (!(out.lemma_deviation <= tol.lemma))
        throw Error(ErrorCode::LemmaViolated,
                    "U~ U varies across the circle (relative deviation " +
                        std::to_string(out.lemma_deviation) + ")");

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(k);
    const auto& lambda = eig.eigenvalues();
    if (eig.info() != Eigen::Success || !(lambda(0) > tol.eigen_floor * lambda(dim - 1)))
        throw Error(ErrorCode::KNotPD, "U~ U is not positive definite (min eigenvalue " +
                                           std::to_string(lambda(0)) + ")");
    const CMatrix k_inv_sqrt =
        eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();

    LaurentMatrixPoly u(dim, u_raw.n_neg(), u_raw.n_pos());
    for (int n = -u_raw.n_neg(); n <= u_raw.n_pos(); ++n) u.coeff(n).noalias() = u_raw.coeff(n) * k_inv_sqrt;

    GridSamples g = evaluate_on_grid(u, grid_for_band(2L * u.count()));
    std::vector<Complex> dets(g.size());
    Complex mean{};
    for (int j = 0; j < g.size(); ++j) {
        dets[j] = CMatrix(g.node(j)).partialPivLu().determinant();
        mean += dets[j];
    }
    mean /= static_cast<double>(g.size());
    out.det_constant = mean;

    const Complex c = std::polar(1.0, -std::arg(mean) / M);
    for (int n = -u.n_neg(); n <= u.n_pos(); ++n) u.coeff(n).leftCols(M) *= c;
    for (int j = 0; j < g.size(); ++j) {
        g.node(j).leftCols(M) *= c;
        out.det_deviation = std::max(out.det_deviation, std::abs(dets[j] * std::pow(c, M) - 1.0));
    }
    out.paraunitary_residual = unitarity_residual(g);
    out.u = std::move(u);
    return out;
}

// ---------------------------------------------------------------------------

double product_analytic_residual(const CompletionInput& input, const LaurentMatrixPoly& u)
{
    const int M = input.block_size;
    const int m = input.blocks;
    const int dim = M * m;
    long band = 1;
    for (const auto& z : input.zetas) band = std::max<long>(band, z.n_neg());
    band = band + input.f.n_pos() + u.n_neg() + u.n_pos() + 1;
    const int size = grid_for_band(2 * band + 1);

    const GridSamples ug = evaluate_on_grid(u, size);
    std::vector<GridSamples> zg;
    zg.reserve(input.zetas.size());
    for (const auto& z : input.zetas) zg.push_back(evaluate_on_grid(z, size));
    const GridSamples fg = evaluate_on_grid(input.f, size);

    // Last block row of F U, stored as a dim x dim grid with only rows 0..M-1 used.
    GridSamples row(dim, size);
    for (int j = 0; j < size; ++j) {
        auto out = row.node(j);
        const auto un = ug.node(j);
        CMatrix acc = fg.node(j) * un.middleRows((m - 1) * M, M);
        for (int i = 0; i + 1 < m; ++i) acc.noalias() += zg[i].node(j) * un.middleRows(i * M, M);
        out.topRows(M) = acc;
    }
    const LaurentMatrixPoly coeffs = all_coefficients(row);

    double scale = 1.0;
    for (const auto& z : input.zetas) scale = std::max(scale, z.max_coeff_abs());
    scale = std::max(scale, input.f.max_coeff_abs());
    return coeffs.max_negative_abs() / scale;
}

ParaunitaryFactor complete(const CompletionInput& input, const CompletionTolerances& tol)
{
    validate(input, tol);
    const int N = input.order;
    const FormalInverse inv = formal_inverse(input.f, std::max(N, 1), tol);
    std::vector<LaurentMatrixPoly> minus;
    minus.reserve(input.zetas.size());
    for (const auto& z : input.zetas) minus.push_back(minus_part(inv, z, N));

    const HankelSystem system(input.block_size, N, minus);
    ParaunitaryFactor out = normalize(solve_solutions(system, input.blocks), input.block_size, input.blocks, tol);
    out.order = N;
    out.analytic_residual = product_analytic_residual(input, out.u);
    assert(out.paraunitary_residual <= tol.paraunitary);
    assert(out.analytic_residual <= tol.analytic);
    return out;
}

}  // namespace msf
