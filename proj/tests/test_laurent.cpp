#include <gtest/gtest.h>

#include "msf/error.hpp"
#include "msf/laurent.hpp"
#include "test_support.hpp"

using namespace msf;
using msf::testing::convolve_direct;
using msf::testing::evaluate_direct;
using msf::testing::max_diff;
using msf::testing::random_poly;
using msf::testing::unit_point;

TEST(LaurentPoly, BandAndCoefficientAccess)
{
    LaurentMatrixPoly p(2, 3, 1);
    EXPECT_EQ(p.count(), 5);
    EXPECT_TRUE(p.has_power(-3));
    EXPECT_FALSE(p.has_power(2));
    p.coeff(-3)(0, 1) = {1.0, 2.0};
    EXPECT_EQ(p.data()[1], Complex(1.0, 2.0));
    EXPECT_THROW(p.coeff(2), Error);
    EXPECT_EQ(max_abs(p.coeff_or_zero(7)), 0.0);
}

TEST(LaurentPoly, AnalyticPredicates)
{
    LaurentMatrixPoly p(1, 2, 2);
    p.coeff(1)(0, 0) = 1.0;
    EXPECT_TRUE(p.is_analytic());
    EXPECT_FALSE(p.is_antianalytic());
    p.coeff(-2)(0, 0) = 1e-14;
    EXPECT_FALSE(p.is_analytic());
    EXPECT_TRUE(p.is_analytic(1e-13));
    EXPECT_DOUBLE_EQ(p.max_negative_abs(), 1e-14);
    EXPECT_TRUE(LaurentMatrixPoly::identity(3).is_constant());
}

TEST(LaurentPoly, AdjointMatchesPointwiseConjugateTranspose)
{
    const auto p = random_poly(3, 2, 4, 11);
    const auto q = adjoint(p);
    EXPECT_EQ(q.n_neg(), 4);
    EXPECT_EQ(q.n_pos(), 2);
    for (int j = 0; j < 7; ++j) {
        const Complex z = unit_point(j, 7);
        EXPECT_LT(max_abs(evaluate_direct(q, z) - evaluate_direct(p, z).adjoint()), 1e-13);
    }
}

TEST(LaurentPoly, ProjectionsSplitTheSeries)
{
    const auto p = random_poly(2, 3, 3, 5);
    const auto plus = project_plus(p);
    const auto minus = project_minus(p);
    EXPECT_TRUE(plus.is_analytic());
    EXPECT_TRUE(minus.is_antianalytic());
    // The constant term sits in both halves.
    EXPECT_LT(max_diff(plus + minus - LaurentMatrixPoly::constant(constant_term(p)), p), 1e-15);
}

TEST(LaurentPoly, MultiplyMatchesDirectConvolution)
{
    const auto a = random_poly(3, 4, 2, 1);
    const auto b = random_poly(3, 1, 5, 2);
    const auto fast = multiply(a, b);
    const auto slow = convolve_direct(a, b);
    EXPECT_EQ(fast.n_neg(), 5);
    EXPECT_EQ(fast.n_pos(), 7);
    EXPECT_LT(max_diff(fast, slow), 1e-13);
}

TEST(LaurentPoly, BlockTransposeKeepsBlocksIntact)
{
    CMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = Complex(i, j);
    const CMatrix t = block_transpose(a, 2);
    EXPECT_EQ(CMatrix(t.block(0, 2, 2, 2)), CMatrix(a.block(2, 0, 2, 2)));
    EXPECT_EQ(CMatrix(t.block(2, 0, 2, 2)), CMatrix(a.block(0, 2, 2, 2)));
    EXPECT_EQ(CMatrix(block_hermitian(a, 2).block(0, 2, 2, 2)), CMatrix(a.block(2, 0, 2, 2).conjugate()));
}

TEST(GridDuality, ToGridMatchesDirectEvaluation)
{
    const auto p = random_poly(2, 3, 4, 7);
    const auto g = to_grid(p, 16);
    for (int j = 0; j < 16; ++j) EXPECT_LT(max_abs(g.node(j) - evaluate_direct(p, unit_point(j, 16))), 1e-13);
}

TEST(GridDuality, FromGridInvertsToGrid)
{
    const auto p = random_poly(2, 5, 6, 3);
    const auto back = from_grid(to_grid(p, 16), 5, 6);
    EXPECT_LT(max_diff(back, p), 1e-14);
}

TEST(GridDuality, NegativePowerSitsAtTheTopIndex)
{
    // z^{-1} I sampled on the grid; its resolved coefficients carry all mass at power -1.
    GridSamples s(1, 8);
    for (int j = 0; j < 8; ++j) s.node(j)(0, 0) = std::conj(unit_point(j, 8));
    const auto c = all_coefficients(s);
    EXPECT_EQ(c.n_neg(), 3);
    EXPECT_EQ(c.n_pos(), 4);
    EXPECT_NEAR(std::abs(c.coeff(-1)(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(c.max_coeff_abs(), 1.0, 1e-15);
}

TEST(GridDuality, ToGridRejectsAliasing)
{
    const auto p = random_poly(1, 5, 5, 1);
    EXPECT_THROW(to_grid(p, 8), Error);
    try {
        to_grid(p, 8);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GridTooSmall);
    }
}

TEST(GridDuality, EvaluateOnGridFoldsLongSeries)
{
    const auto p = random_poly(2, 9, 12, 9);
    const auto g = evaluate_on_grid(p, 8);
    for (int j = 0; j < 8; ++j) EXPECT_LT(max_abs(g.node(j) - evaluate_direct(p, unit_point(j, 8))), 1e-12);
}

TEST(GridDuality, GridSizeMustBePowerOfTwo)
{
    EXPECT_THROW(GridSamples(2, 12), Error);
    EXPECT_THROW(GridSamples(2, 1), Error);
    EXPECT_NO_THROW(GridSamples(2, 2));
}

TEST(GridDuality, PointwiseProductMatchesPolynomialProduct)
{
    const auto a = random_poly(2, 2, 2, 4);
    const auto b = random_poly(2, 1, 3, 5);
    const auto prod = pointwise_product(to_grid(a, 32), to_grid(b, 32));
    EXPECT_LT(max_diff(prod, to_grid(convolve_direct(a, b), 32)), 1e-13);
}

TEST(Paraunitarity, ConstantUnitaryAndDelayArePara)
{
    CMatrix v(2, 2);
    v << Complex(0, 1), 0, 0, 1;
    LaurentMatrixPoly u(2, 1, 1);
    u.coeff(1) = v;  // z V
    EXPECT_TRUE(is_paraunitary(u, 1e-14).ok);
    u.coeff(-1)(0, 0) = 0.1;
    const auto check = is_paraunitary(u, 1e-14);
    EXPECT_FALSE(check.ok);
    EXPECT_GT(check.residual, 0.05);
}

TEST(Paraunitarity, ElementaryButterflyIsPara)
{
    // [[c, s z], [-s z^{-1}, c]] with c^2 + s^2 = 1
    const double c = 0.6;
    const double s = 0.8;
    LaurentMatrixPoly u(2, 1, 1);
    u.coeff(0)(0, 0) = c;
    u.coeff(0)(1, 1) = c;
    u.coeff(1)(0, 1) = s;
    u.coeff(-1)(1, 0) = -s;
    EXPECT_LT(is_paraunitary(u, 1e-14).residual, 1e-15);
}
