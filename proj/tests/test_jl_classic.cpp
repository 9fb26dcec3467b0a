#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "msf/error.hpp"
#include "msf/jl_classic.hpp"
#include "msf/jl_doubling.hpp"
#include "msf/verify_bench.hpp"
#include "test_support.hpp"

using namespace msf;

namespace {

GridSamples density_of(const GridSamples& factor)
{
    GridSamples s(factor.dim(), factor.size());
    for (int j = 0; j < s.size(); ++j) s.node(j) = factor.node(j) * factor.node(j).adjoint();
    return s;
}

// [[1, 0], [z, 1]] diag(1 + 0.5 z, 1)
GridSamples known_factor(int grid)
{
    LaurentMatrixPoly p(2, 0, 2);
    p.coeff(0)(0, 0) = 1.0;
    p.coeff(1)(0, 0) = 0.5;
    p.coeff(1)(1, 0) = 1.0;
    p.coeff(2)(1, 0) = 0.5;
    p.coeff(0)(1, 1) = 1.0;
    return to_grid(p, grid);
}

LaurentMatrixPoly scalar_series(const std::vector<double>& negative_coeffs)
{
    const int depth = static_cast<int>(negative_coeffs.size());
    LaurentMatrixPoly p(1, depth, 0);
    p.coeff(0)(0, 0) = 1.0;
    for (int k = 1; k <= depth; ++k) p.coeff(-k)(0, 0) = negative_coeffs[k - 1];
    return p;
}

}  // namespace

TEST(TailOrder, FiniteSupport)
{
    const std::vector<LaurentMatrixPoly> z{scalar_series({0.3, -0.2, 0.1, 0.0, 0.0})};
    EXPECT_EQ(tail_order(z, 1e-14, 128), 3);
}

TEST(TailOrder, ZeroRowGivesZero)
{
    const std::vector<LaurentMatrixPoly> z{LaurentMatrixPoly(1, 6, 0), LaurentMatrixPoly(1, 6, 0)};
    EXPECT_EQ(tail_order(z, 1e-14, 128), 0);
}

TEST(TailOrder, GeometricTailMatchesDirectScan)
{
    std::vector<double> c(60);
    for (int n = 1; n <= 60; ++n) c[n - 1] = std::ldexp(1.0, -n);
    LaurentMatrixPoly p = scalar_series(c);
    p.coeff(0)(0, 0) = 0.0;
    const double eps = 1e-6;

    // Direct scan: the smallest N with every |c_n| (n > N) below eps * max |c|.
    const double peak = 0.5;
    int expected = 0;
    for (int n = 1; n <= 60; ++n)
        if (c[n - 1] >= eps * peak) expected = n;
    EXPECT_EQ(expected, 20);
    EXPECT_EQ(tail_order(std::vector<LaurentMatrixPoly>{p}, eps, 256), expected);
}

TEST(TailOrder, CapLimitsTheOrder)
{
    const std::vector<LaurentMatrixPoly> z{scalar_series(std::vector<double>(40, 1.0))};
    EXPECT_EQ(tail_order(z, 1e-14, 16), 16);
}

TEST(ClassicFactorize, IdentityDensity)
{
    const auto s = GridSamples::constant(CMatrix::Identity(4, 4), 32);
    const auto result = classic_factorize(s);
    EXPECT_LT(msf::testing::max_diff(result.factor, s), 1e-15);
    for (const auto& step : result.report.steps) EXPECT_EQ(step.order, 0);
}

TEST(ClassicFactorize, ScalarDensityIsTheScalarFactor)
{
    GridSamples s(1, 64);
    for (int j = 0; j < 64; ++j) s.node(j)(0, 0) = 1.25 + std::cos(2.0 * M_PI * j / 64);
    const auto result = classic_factorize(s);
    EXPECT_TRUE(result.report.steps.empty());
    const auto c = all_coefficients(result.factor);
    EXPECT_NEAR(std::abs(c.coeff(0)(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c.coeff(1)(0, 0) - 0.5), 0.0, 1e-12);
}

TEST(ClassicFactorize, RecoversKnownFactorUpToConstantUnitary)
{
    const auto known = known_factor(64);
    const auto result = classic_factorize(density_of(known));
    const auto gap = constant_unitary_gap(known, result.factor);
    EXPECT_LT(gap.deviation, 1e-10);
    EXPECT_LT(gap.unitarity, 1e-10);
    EXPECT_LT(result.report.c1, 1e-12);
    EXPECT_LT(result.report.c2, 1e-10);
}

TEST(ClassicFactorize, StageInvariants)
{
    GeneratorConfig gen;
    gen.r = 5;
    gen.n = 2;
    gen.grid = 2048;
    gen.seed = 4;
    const auto s = generate_density(gen);
    FactorConfig cfg;
    cfg.check_invariants = true;
    const auto result = classic_factorize(s, cfg);
    ASSERT_EQ(result.report.invariants.size(), 4u);
    double previous = 0.0;
    for (const auto& inv : result.report.invariants) {
        EXPECT_LT(inv.analytic_residual, 1e-9) << "stage " << inv.stage;
        EXPECT_EQ(inv.upper_zero, 0.0) << "stage " << inv.stage;
        EXPECT_LT(inv.conservation, std::max(10.0 * previous, 1e-12)) << "stage " << inv.stage;
        previous = std::max(previous, inv.conservation);
    }
    for (const auto& step : result.report.steps) {
        EXPECT_LT(step.paraunitary_residual, 1e-10);
        EXPECT_LT(step.analytic_residual, 1e-9);
    }
}

TEST(ClassicFactorize, HistoryKeepsEveryAppliedFactor)
{
    GeneratorConfig gen;
    gen.r = 3;
    gen.n = 1;
    gen.grid = 32;
    FactorConfig cfg;
    cfg.keep_history = true;
    const auto result = classic_factorize(generate_density(gen), cfg);
    EXPECT_EQ(result.history.size(), 2u);
    EXPECT_EQ(result.history[0].dim(), 2);
    EXPECT_EQ(result.history[1].dim(), 3);
}

TEST(ClassicFactorize, FailureNamesTheStage)
{
    GeneratorConfig gen;
    gen.r = 3;
    gen.n = 1;
    gen.grid = 32;
    FactorConfig cfg;
    cfg.tolerances.lemma = -1.0;  // every completion violates it
    try {
        classic_factorize(generate_density(gen), cfg);
        FAIL() << "expected StageFailed";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StageFailed);
        EXPECT_EQ(e.context().stage, 2);
    }
}
