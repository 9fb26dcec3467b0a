#pragma once

#include <span>
#include <vector>

#include "msf/laurent.hpp"

namespace msf {

/// Last block row (zeta_1, ..., zeta_{m-1}, f) of the block matrix
///
///     F = [ I             0 ]
///         [ zeta_1 ... zeta_{m-1}  f ]
///
/// with M x M blocks. zeta_j is anti-analytic of order <= N, f analytic of
/// degree <= N with an invertible constant term.
struct CompletionInput {
    int block_size = 1;  // M
    int blocks = 2;      // m
    int order = 0;       // N
    std::vector<LaurentMatrixPoly> zetas;
    LaurentMatrixPoly f;
};

struct CompletionTolerances {
    double paraunitary = 1e-10;
    double lemma = 1e-10;
    double analytic = 1e-9;
    /// sigma_min(C_0{f}) must exceed this times |C_0{f}|_2.
    double sigma_floor = 1e-12;
    /// Eigenvalue floor (relative) for the Lemma constant K.
    double eigen_floor = 1e-14;
    /// Largest tolerated growth of the formal inverse series of f.
    double inverse_growth = 1e12;
};

/// Throws InvalidArgument / DimensionMismatch for malformed input and
/// FNearSingular when C_0{f} is numerically singular.
void validate(const CompletionInput& input, const CompletionTolerances& tol = {});

/// f^{-1} zeta_j = zeta_j^+ + zeta_j^- with zeta_j^- holding the strictly
/// negative powers (order <= N) and zeta_j^+ analytic. f^{-1} is the formal
/// power series inverse; only finitely many of its terms enter each piece.
struct SplitParts {
    LaurentMatrixPoly f;
    /// Analytic remainders, truncated to degree N.
    std::vector<LaurentMatrixPoly> plus;
    std::vector<LaurentMatrixPoly> minus;
};

SplitParts split_f(const CompletionInput& input, const CompletionTolerances& tol = {});

/// Block-Hankel data Gamma_j[a][b] = gamma_{j,a+b} (zero for a + b > N), where
/// gamma_{j,n} = C_{-n}{zeta_j}, and the reduced Hermitian positive-definite
/// matrix I + sum_j Gamma_j Gamma_j^H left after eliminating X_1..X_{m-1}.
class HankelSystem {
public:
    HankelSystem(int block_size, int order, std::span<const LaurentMatrixPoly> minus_parts);

    int block_size() const noexcept { return block_size_; }
    int order() const noexcept { return order_; }
    /// m - 1.
    int zeta_count() const noexcept { return static_cast<int>(stacked_.cols() / block_size_); }
    /// M (N + 1).
    int dimension() const noexcept { return static_cast<int>(stacked_.rows()); }

    /// gamma_{j,n}.
    CMatrix gamma(int j, int n) const;
    /// Dense Gamma_j, for inspection.
    CMatrix gamma_matrix(int j) const;
    /// Lower triangle holds I + sum Gamma Gamma^H; the upper triangle is unspecified.
    const CMatrix& solve_matrix() const noexcept { return solve_matrix_; }
    /// Dense Hermitian copy of the solve matrix.
    CMatrix solve_matrix_full() const;
    /// Right-hand sides, one block column per solution: -Gamma_s (I,0,..,0)^T
    /// for s < m-1 and (I,0,..,0)^T for the last one.
    CMatrix right_hand_sides() const;
    /// Gamma_j^H * w for a block column vector w of height M (N + 1).
    CMatrix apply_gamma_adjoint(int j, const CMatrix& w) const;

private:
    int block_size_;
    int order_;
    CMatrix stacked_;  // (N+1)M x (m-1)M, block (n, j) = gamma_{j,n}
    CMatrix solve_matrix_;
};

/// Solves the reduced system once for all m right-hand sides and
/// back-substitutes X_1..X_{m-1}. Column block s of the result is the s-th
/// solution: rows 1..m-1 are analytic of degree <= N, the last block row is
/// the adjoint of an analytic polynomial. With all zeta = 0 this is the identity.
LaurentMatrixPoly solve_solutions(const HankelSystem& system, int blocks);

/// U with the completion structure, paraunitary, det U = 1.
struct ParaunitaryFactor {
    LaurentMatrixPoly u;  // dimension m M, band [-N, N]
    int block_size = 1;
    int blocks = 2;
    int order = 0;
    /// Constant value of det U before the unimodular column rescale.
    Complex det_constant{1.0, 0.0};
    /// Relative node-to-node deviation of U~ U before normalization.
    double lemma_deviation = 0.0;
    double paraunitary_residual = 0.0;
    /// max_j |det U(z_j) - 1| after normalization.
    double det_deviation = 0.0;
    /// Negative-power residual of F U relative to max(1, |F|); NaN if not measured.
    double analytic_residual = 0.0;
};

/// Largest node-to-node deviation of U~ U from its grid mean, relative to the mean.
double lemma_deviation(const LaurentMatrixPoly& u);

/// Right-multiplies by K^{-1/2}, K = U~ U (constant), then rescales the first
/// block column so that det U = 1. Throws LemmaViolated or KNotPD.
ParaunitaryFactor normalize(const LaurentMatrixPoly& u_raw, int block_size, int blocks,
                            const CompletionTolerances& tol = {});

/// Max modulus of the negative-power coefficients of F U, relative to max(1, |F|).
double product_analytic_residual(const CompletionInput& input, const LaurentMatrixPoly& u);

/// The whole construction: split, assemble, solve, normalize, verify.
ParaunitaryFactor complete(const CompletionInput& input, const CompletionTolerances& tol = {});

}  // namespace msf
