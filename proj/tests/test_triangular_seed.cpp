#include <gtest/gtest.h>

#include "msf/error.hpp"
#include "msf/triangular_seed.hpp"
#include "msf/verify_bench.hpp"

using namespace msf;

namespace {

GridSamples random_density(int r, int n, int grid, std::uint64_t seed)
{
    GeneratorConfig cfg;
    cfg.r = r;
    cfg.n = n;
    cfg.grid = grid;
    cfg.seed = seed;
    return generate_density(cfg);
}

}  // namespace

TEST(TriangularSeed, ReproducesDensityAndIsLowerTriangular)
{
    const auto s = random_density(5, 2, 64, 3);
    const auto seed = triangular_seed(s);
    EXPECT_LT(metric_c1(s, seed.q), 1e-12);
    for (int j = 0; j < s.size(); ++j) {
        const auto q = seed.q.node(j);
        for (int i = 0; i < 5; ++i)
            for (int k = i + 1; k < 5; ++k) EXPECT_EQ(q(i, k), Complex(0.0));
    }
}

TEST(TriangularSeed, DiagonalEntriesAreOuter)
{
    // This density has a determinant root close to the circle; the grid must resolve its cepstral tail.
    const auto s = random_density(4, 3, 8192, 8);
    const auto seed = triangular_seed(s);
    ASSERT_EQ(seed.diagonal.size(), 4u);
    for (int m = 0; m < 4; ++m) {
        const auto c = all_coefficients(seed.q.block(m, m, 1));
        EXPECT_LT(c.max_negative_abs(), 1e-9 * c.max_coeff_abs());
        EXPECT_GT(seed.diagonal[m].coeffs[0].real(), 0.0);
        EXPECT_NEAR(seed.diagonal[m].coeffs[0].imag(), 0.0, 1e-12);
    }
}

TEST(TriangularSeed, IdentityIsFixed)
{
    const auto seed = triangular_seed(GridSamples::constant(CMatrix::Identity(3, 3), 16));
    for (int j = 0; j < 16; ++j) EXPECT_LT(max_abs(seed.q.node(j) - CMatrix::Identity(3, 3)), 1e-15);
}

TEST(TriangularSeed, RejectsNonHermitian)
{
    auto s = GridSamples::constant(CMatrix::Identity(2, 2), 8);
    s.node(3)(0, 1) = 0.5;
    try {
        triangular_seed(s);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
        EXPECT_EQ(e.context().node, 3);
    }
}

TEST(TriangularSeed, RejectsIndefiniteNode)
{
    auto s = GridSamples::constant(CMatrix::Identity(3, 3), 8);
    s.node(6)(2, 2) = -1.0;
    try {
        triangular_seed(s);
        FAIL() << "expected NotPositiveDefinite";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
        EXPECT_EQ(e.context().node, 6);
        EXPECT_EQ(e.context().index, 2);
    }
}
