#include "msf/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "msf/error.hpp"

namespace msf {

bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(long n)
{
    long p = 2;
    while (p < n) p *= 2;
    return static_cast<int>(p);
}

// ---------------------------------------------------------------------------
// LaurentMatrixPoly

LaurentMatrixPoly::LaurentMatrixPoly(int dim, int n_neg, int n_pos)
    : dim_(dim), n_neg_(n_neg), n_pos_(n_pos)
{
    if (dim <= 0 || n_neg < 0 || n_pos < 0)
        throw Error(ErrorCode::InvalidArgument,
                    "Laurent polynomial needs dim > 0 and non-negative band, got dim=" +
                        std::to_string(dim) + " band=[" + std::to_string(-n_neg) + "," +
                        std::to_string(n_pos) + "]");
    data_.assign(static_cast<std::size_t>(count()) * dim * dim, Complex{});
}

LaurentMatrixPoly LaurentMatrixPoly::constant(const CMatrix& value)
{
    if (value.rows() != value.cols())
        throw Error(ErrorCode::DimensionMismatch, "constant coefficient must be square");
    LaurentMatrixPoly p(static_cast<int>(value.rows()), 0, 0);
    p.coeff(0) = value;
    return p;
}

LaurentMatrixPoly LaurentMatrixPoly::identity(int dim)
{
    return constant(CMatrix::Identity(dim, dim));
}

std::size_t LaurentMatrixPoly::offset(int n) const
{
    if (!has_power(n))
        throw Error(ErrorCode::InvalidArgument,
                    "power " + std::to_string(n) + " outside stored band [" +
                        std::to_string(-n_neg_) + "," + std::to_string(n_pos_) + "]");
    return static_cast<std::size_t>(n + n_neg_) * dim_ * dim_;
}

MatrixView LaurentMatrixPoly::coeff(int n) { return {data_.data() + offset(n), dim_, dim_}; }

ConstMatrixView LaurentMatrixPoly::coeff(int n) const
{
    return {data_.data() + offset(n), dim_, dim_};
}

CMatrix LaurentMatrixPoly::coeff_or_zero(int n) const
{
    if (!has_power(n)) return CMatrix::Zero(dim_, dim_);
    return coeff(n);
}

bool LaurentMatrixPoly::is_analytic(double tol) const { return max_negative_abs() <= tol; }

bool LaurentMatrixPoly::is_antianalytic(double tol) const
{
    for (int n = 1; n <= n_pos_; ++n)
        if (max_abs(coeff(n)) > tol) return false;
    return true;
}

bool LaurentMatrixPoly::is_constant(double tol) const
{
    return is_analytic(tol) && is_antianalytic(tol);
}

double LaurentMatrixPoly::max_coeff_abs() const
{
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double LaurentMatrixPoly::max_negative_abs() const
{
    double m = 0.0;
    for (int n = -n_neg_; n < 0; ++n) m = std::max(m, max_abs(coeff(n)));
    return m;
}

LaurentMatrixPoly LaurentMatrixPoly::with_band(int n_neg, int n_pos) const
{
    LaurentMatrixPoly out(dim_, n_neg, n_pos);
    const int lo = std::max(-n_neg, -n_neg_);
    const int hi = std::min(n_pos, n_pos_);
    for (int n = lo; n <= hi; ++n) out.coeff(n) = coeff(n);
    return out;
}

LaurentMatrixPoly LaurentMatrixPoly::block(int row, int col, int size) const
{
    if (row < 0 || col < 0 || size <= 0 || row + size > dim_ || col + size > dim_)
        throw Error(ErrorCode::DimensionMismatch, "sub-block outside matrix");
    LaurentMatrixPoly out(size, n_neg_, n_pos_);
    for (int n = -n_neg_; n <= n_pos_; ++n) out.coeff(n) = coeff(n).block(row, col, size, size);
    return out;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator+=(const LaurentMatrixPoly& other)
{
    if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "sum of different sizes");
    if (other.n_neg_ > n_neg_ || other.n_pos_ > n_pos_)
        *this = with_band(std::max(n_neg_, other.n_neg_), std::max(n_pos_, other.n_pos_));
    for (int n = -other.n_neg_; n <= other.n_pos_; ++n) coeff(n) += other.coeff(n);
    return *this;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator-=(const LaurentMatrixPoly& other)
{
    if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "difference of different sizes");
    if (other.n_neg_ > n_neg_ || other.n_pos_ > n_pos_)
        *this = with_band(std::max(n_neg_, other.n_neg_), std::max(n_pos_, other.n_pos_));
    for (int n = -other.n_neg_; n <= other.n_pos_; ++n) coeff(n) -= other.coeff(n);
    return *this;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator*=(Complex scale)
{
    for (auto& v : data_) v *= scale;
    return *this;
}

LaurentMatrixPoly operator+(LaurentMatrixPoly a, const LaurentMatrixPoly& b) { return a += b; }
LaurentMatrixPoly operator-(LaurentMatrixPoly a, const LaurentMatrixPoly& b) { return a -= b; }

// ---------------------------------------------------------------------------
// GridSamples

GridSamples::GridSamples(int dim, int size) : dim_(dim), size_(size)
{
    if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "grid samples need dim > 0");
    if (size < 2 || !is_pow2(size))
        throw Error(ErrorCode::InvalidArgument,
                    "grid size must be a power of two >= 2, got " + std::to_string(size));
    data_.assign(static_cast<std::size_t>(size) * dim * dim, Complex{});
}

GridSamples GridSamples::constant(const CMatrix& value, int size)
{
    GridSamples g(static_cast<int>(value.rows()), size);
    for (int j = 0; j < size; ++j) g.node(j) = value;
    return g;
}

MatrixView GridSamples::node(int j)
{
    return {data_.data() + static_cast<std::size_t>(j) * dim_ * dim_, dim_, dim_};
}

ConstMatrixView GridSamples::node(int j) const
{
    return {data_.data() + static_cast<std::size_t>(j) * dim_ * dim_, dim_, dim_};
}

Complex GridSamples::point(int j) const
{
    return std::polar(1.0, 2.0 * std::numbers::pi * j / size_);
}

GridSamples GridSamples::block(int row, int col, int size) const
{
    if (row < 0 || col < 0 || size <= 0 || row + size > dim_ || col + size > dim_)
        throw Error(ErrorCode::DimensionMismatch, "sub-block outside matrix");
    GridSamples out(size, size_);
    for (int j = 0; j < size_; ++j) out.node(j) = node(j).block(row, col, size, size);
    return out;
}

// ---------------------------------------------------------------------------
// Algebra

LaurentMatrixPoly adjoint(const LaurentMatrixPoly& p)
{
    LaurentMatrixPoly out(p.dim(), p.n_pos(), p.n_neg());
    for (int n = -p.n_neg(); n <= p.n_pos(); ++n) out.coeff(-n) = p.coeff(n).adjoint();
    return out;
}

namespace {

CMatrix block_swap(const CMatrix& a, int block_size, bool conjugate)
{
    if (block_size <= 0 || a.rows() != a.cols() || a.rows() % block_size != 0)
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix of size " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " is not a square grid of " + std::to_string(block_size) + "-blocks");
    const Eigen::Index nb = a.rows() / block_size;
    CMatrix out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < nb; ++i)
        for (Eigen::Index j = 0; j < nb; ++j) {
            auto src = a.block(j * block_size, i * block_size, block_size, block_size);
            auto dst = out.block(i * block_size, j * block_size, block_size, block_size);
            if (conjugate)
                dst = src.conjugate();
            else
                dst = src;
        }
    return out;
}

}  // namespace

CMatrix block_transpose(const CMatrix& a, int block_size) { return block_swap(a, block_size, false); }
CMatrix block_hermitian(const CMatrix& a, int block_size) { return block_swap(a, block_size, true); }

LaurentMatrixPoly project_plus(const LaurentMatrixPoly& p) { return p.with_band(0, p.n_pos()); }
LaurentMatrixPoly project_minus(const LaurentMatrixPoly& p) { return p.with_band(p.n_neg(), 0); }
CMatrix constant_term(const LaurentMatrixPoly& p) { return p.coeff_or_zero(0); }

LaurentMatrixPoly multiply(const LaurentMatrixPoly& p, const LaurentMatrixPoly& q)
{
    if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "product of different sizes");
    const int n_neg = p.n_neg() + q.n_neg();
    const int n_pos = p.n_pos() + q.n_pos();
    const int size = next_pow2(n_neg + n_pos + 1);
    return from_grid(pointwise_product(to_grid(p, size), to_grid(q, size)), n_neg, n_pos);
}

// ---------------------------------------------------------------------------
// Grid duality

GridSamples evaluate_on_grid(const LaurentMatrixPoly& p, int size)
{
    GridSamples g(p.dim(), size);
    const std::size_t block = static_cast<std::size_t>(p.dim()) * p.dim();
    auto out = g.data();
    auto in = p.data();
    for (int n = -p.n_neg(); n <= p.n_pos(); ++n) {
        const int slot = ((n % size) + size) % size;
        const std::size_t src = static_cast<std::size_t>(n + p.n_neg()) * block;
        const std::size_t dst = static_cast<std::size_t>(slot) * block;
        for (std::size_t e = 0; e < block; ++e) out[dst + e] += in[src + e];
    }
    detail::transform_inplace(out, size, static_cast<int>(block), detail::Transform::Synthesis);
    return g;
}

GridSamples to_grid(const LaurentMatrixPoly& p, int size)
{
    if (size < p.count())
        throw Error(ErrorCode::GridTooSmall,
                    "grid of " + std::to_string(size) + " nodes cannot hold band of " +
                        std::to_string(p.count()) + " coefficients");
    return evaluate_on_grid(p, size);
}

LaurentMatrixPoly from_grid(const GridSamples& s, int n_neg, int n_pos)
{
    if (n_neg < 0 || n_pos < 0 || n_neg + n_pos + 1 > s.size())
        throw Error(ErrorCode::GridTooSmall,
                    "band [" + std::to_string(-n_neg) + "," + std::to_string(n_pos) +
                        "] exceeds grid of " + std::to_string(s.size()) + " nodes");
    std::vector<Complex> work(s.data().begin(), s.data().end());
    const int block = s.dim() * s.dim();
    detail::transform_inplace(work, s.size(), block, detail::Transform::Analysis);
    LaurentMatrixPoly p(s.dim(), n_neg, n_pos);
    auto out = p.data();
    for (int n = -n_neg; n <= n_pos; ++n) {
        const int slot = ((n % s.size()) + s.size()) % s.size();
        std::copy_n(work.begin() + static_cast<std::ptrdiff_t>(slot) * block, block,
                    out.begin() + static_cast<std::ptrdiff_t>(n + n_neg) * block);
    }
    return p;
}

LaurentMatrixPoly all_coefficients(const GridSamples& s)
{
    return from_grid(s, s.size() / 2 - 1, s.size() / 2);
}

GridSamples pointwise_product(const GridSamples& a, const GridSamples& b)
{
    if (a.dim() != b.dim() || a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "pointwise product of mismatched grids");
    GridSamples out(a.dim(), a.size());
    for (int j = 0; j < a.size(); ++j) out.node(j).noalias() = a.node(j) * b.node(j);
    return out;
}

// ---------------------------------------------------------------------------
// Paraunitarity

double unitarity_residual(const GridSamples& u)
{
    double worst = 0.0;
    const CMatrix eye = CMatrix::Identity(u.dim(), u.dim());
    for (int j = 0; j < u.size(); ++j) {
        CMatrix prod = u.node(j) * u.node(j).adjoint();
        worst = std::max(worst, max_abs(prod - eye));
    }
    return worst;
}

ParaunitaryCheck is_paraunitary(const LaurentMatrixPoly& u, double tol)
{
    const double residual = unitarity_residual(evaluate_on_grid(u, next_pow2(2L * u.count())));
    return {residual <= tol, residual};
}

}  // namespace msf
