#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace msf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixView = Eigen::Map<RowMatrix>;
using ConstMatrixView = Eigen::Map<const RowMatrix>;

bool is_pow2(long n);
/// Smallest power of two >= max(n, 2).
int next_pow2(long n);

/// |A|_inf: the largest entry modulus (0 for an empty matrix).
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Finite Laurent series sum_{n=-n_neg}^{n_pos} A_n z^n with square complex
/// coefficients. Storage is coefficient-major from n = -n_neg upward, each
/// coefficient row-major.
class LaurentMatrixPoly {
public:
    LaurentMatrixPoly() : LaurentMatrixPoly(1, 0, 0) {}
    LaurentMatrixPoly(int dim, int n_neg, int n_pos);

    static LaurentMatrixPoly constant(const CMatrix& value);
    static LaurentMatrixPoly identity(int dim);

    int dim() const noexcept { return dim_; }
    int n_neg() const noexcept { return n_neg_; }
    int n_pos() const noexcept { return n_pos_; }
    /// Number of stored coefficient slots.
    int count() const noexcept { return n_neg_ + n_pos_ + 1; }
    bool has_power(int n) const noexcept { return n >= -n_neg_ && n <= n_pos_; }

    MatrixView coeff(int n);
    ConstMatrixView coeff(int n) const;
    /// Copy of A_n, or zero when n lies outside the stored band.
    CMatrix coeff_or_zero(int n) const;

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    bool is_analytic(double tol = 0.0) const;
    bool is_antianalytic(double tol = 0.0) const;
    bool is_constant(double tol = 0.0) const;

    double max_coeff_abs() const;
    /// Largest entry modulus over the coefficients of negative powers.
    double max_negative_abs() const;

    /// Same series re-stored on band [-n_neg, n_pos]; coefficients outside are dropped.
    LaurentMatrixPoly with_band(int n_neg, int n_pos) const;
    /// Square sub-block [row, row+size) x [col, col+size) of every coefficient.
    LaurentMatrixPoly block(int row, int col, int size) const;

    LaurentMatrixPoly& operator+=(const LaurentMatrixPoly& other);
    LaurentMatrixPoly& operator-=(const LaurentMatrixPoly& other);
    LaurentMatrixPoly& operator*=(Complex scale);

    friend bool operator==(const LaurentMatrixPoly&, const LaurentMatrixPoly&) = default;

private:
    std::size_t offset(int n) const;

    int dim_;
    int n_neg_;
    int n_pos_;
    std::vector<Complex> data_;
};

LaurentMatrixPoly operator+(LaurentMatrixPoly a, const LaurentMatrixPoly& b);
LaurentMatrixPoly operator-(LaurentMatrixPoly a, const LaurentMatrixPoly& b);

/// Values of a matrix function on the uniform grid z_j = exp(2 pi i j / size).
class GridSamples {
public:
    GridSamples() : GridSamples(1, 2) {}
    GridSamples(int dim, int size);

    static GridSamples constant(const CMatrix& value, int size);

    int dim() const noexcept { return dim_; }
    int size() const noexcept { return size_; }

    MatrixView node(int j);
    ConstMatrixView node(int j) const;
    /// z_j for this grid.
    Complex point(int j) const;

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    /// Square sub-block [row, row+size) x [col, col+size) at every node.
    GridSamples block(int row, int col, int size) const;

    friend bool operator==(const GridSamples&, const GridSamples&) = default;

private:
    int dim_;
    int size_;
    std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// Algebra

/// P~(z) = sum A_n^H z^{-n}.
LaurentMatrixPoly adjoint(const LaurentMatrixPoly& p);

/// Transpose of the block grid; blocks keep their internal orientation.
CMatrix block_transpose(const CMatrix& a, int block_size);
/// block_transpose with entries conjugated.
CMatrix block_hermitian(const CMatrix& a, int block_size);

/// Coefficients with n >= 0.
LaurentMatrixPoly project_plus(const LaurentMatrixPoly& p);
/// Coefficients with n <= 0.
LaurentMatrixPoly project_minus(const LaurentMatrixPoly& p);
CMatrix constant_term(const LaurentMatrixPoly& p);

/// Exact product; computed by pointwise products on a grid wide enough for the
/// Cauchy-product band.
LaurentMatrixPoly multiply(const LaurentMatrixPoly& p, const LaurentMatrixPoly& q);

// ---------------------------------------------------------------------------
// Grid duality. Negative powers -k live at transform index size - k.

/// Samples of p. Requires size >= p.count() so that from_grid can invert it.
GridSamples to_grid(const LaurentMatrixPoly& p, int size);
/// Exact pointwise evaluation of p on the grid. Unlike to_grid the band may
/// exceed the grid; coefficients are folded modulo size before transforming.
GridSamples evaluate_on_grid(const LaurentMatrixPoly& p, int size);
/// Coefficients n_neg..n_pos read from the inverse transform of s.
LaurentMatrixPoly from_grid(const GridSamples& s, int n_neg, int n_pos);
/// Every coefficient the grid resolves: band [-(size/2 - 1), size/2].
LaurentMatrixPoly all_coefficients(const GridSamples& s);

/// Pointwise product a(z_j) b(z_j).
GridSamples pointwise_product(const GridSamples& a, const GridSamples& b);

// ---------------------------------------------------------------------------
// Paraunitarity

struct ParaunitaryCheck {
    bool ok = false;
    double residual = 0.0;
};

/// max_j |U(z_j) U(z_j)^H - I|_inf over the given samples.
double unitarity_residual(const GridSamples& u);

/// Evaluates U on a grid of at least 2 * u.count() nodes and checks
/// |U U^H - I|_inf <= tol at every node.
ParaunitaryCheck is_paraunitary(const LaurentMatrixPoly& u, double tol);

}  // namespace msf
