#include <cmath>

#include <gtest/gtest.h>

#include "msf/error.hpp"
#include "msf/jl_doubling.hpp"
#include "msf/report.hpp"
#include "msf/verify_bench.hpp"
#include "test_support.hpp"

using namespace msf;

namespace {

GeneratorConfig small_config()
{
    GeneratorConfig cfg;
    cfg.r = 4;
    cfg.n = 2;
    cfg.grid = 64;
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST(SplitMix64, ReferenceSequence)
{
    // First outputs for seed 0 of the published SplitMix64 reference.
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UniformStaysInRange)
{
    SplitMix64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform(-1.0, 1.0);
        EXPECT_GE(u, -1.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(GenerateDensity, ForcedIdentityGivesIdentity)
{
    GeneratorConfig cfg;
    cfg.r = 3;
    cfg.n = 0;
    cfg.grid = 8;
    cfg.forced_coeffs = std::vector<CMatrix>{CMatrix::Identity(3, 3)};
    const auto s = generate_density(cfg);
    for (int j = 0; j < 8; ++j) EXPECT_EQ(CMatrix(s.node(j)), CMatrix::Identity(3, 3));
}

TEST(GenerateDensity, HermitianAtEveryNode)
{
    const auto s = generate_density(small_config());
    for (int j = 0; j < s.size(); ++j) EXPECT_LT(max_abs(s.node(j) - s.node(j).adjoint()), 1e-13);
}

TEST(GenerateDensity, ReproducibleAndSeedSensitive)
{
    auto cfg = small_config();
    const auto a = generate_density(cfg);
    EXPECT_EQ(a, generate_density(cfg));
    cfg.seed = 43;
    EXPECT_NE(checksum(a), checksum(generate_density(cfg)));
}

TEST(GenerateDensity, GoldenChecksum)
{
    EXPECT_EQ(checksum(generate_density(small_config())), 0xFAC3084D80F64CA0ULL);
}

TEST(GenerateDensity, RealDrawsGiveRealCoefficients)
{
    auto cfg = small_config();
    cfg.real_only = true;
    const auto s = generate_density(cfg);
    // A real polynomial matrix gives S(conj z) = conj S(z): node j and N_g - j are conjugate.
    for (int j = 1; j < s.size(); ++j)
        EXPECT_LT(max_abs(CMatrix(s.node(j)) - CMatrix(s.node(s.size() - j)).conjugate()), 1e-12);
}

TEST(GenerateDensity, RejectsBadConfigs)
{
    auto cfg = small_config();
    cfg.grid = 100;
    EXPECT_THROW(generate_density(cfg), Error);
    cfg = small_config();
    cfg.grid = 4;  // < 2 (n + 1)
    EXPECT_THROW(generate_density(cfg), Error);
    cfg = small_config();
    cfg.r = 0;
    EXPECT_THROW(generate_density(cfg), Error);
}

TEST(MetricC1, TrivialCases)
{
    const auto eye = GridSamples::constant(CMatrix::Identity(2, 2), 8);
    EXPECT_EQ(metric_c1(eye, eye), 0.0);
    const auto two = GridSamples::constant(2.0 * CMatrix::Identity(2, 2), 8);
    EXPECT_EQ(metric_c1(two, eye), 1.0);
    EXPECT_THROW(metric_c1(eye, GridSamples::constant(CMatrix::Identity(3, 3), 8)), Error);
}

TEST(MetricC1, MatchesBruteForceScan)
{
    const auto s = generate_density(small_config());
    const auto f = to_grid(msf::testing::random_poly(4, 0, 2, 3), 64);
    double worst = 0.0;
    for (int j = 0; j < 64; ++j) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Complex acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += f.node(j)(a, k) * std::conj(f.node(j)(b, k));
                worst = std::max(worst, std::abs(s.node(j)(a, b) - acc));
            }
    }
    EXPECT_NEAR(metric_c1(s, f), worst, 1e-12 * worst);
}

TEST(MetricC1, InvariantUnderConstantUnitary)
{
    const auto s = generate_density(small_config());
    const auto f = doubling_factorize(s).factor;
    const Eigen::HouseholderQR<CMatrix> qr(CMatrix::Random(4, 4));
    const CMatrix v = qr.householderQ();
    GridSamples g(4, 64);
    for (int j = 0; j < 64; ++j) g.node(j) = f.node(j) * v;
    EXPECT_NEAR(metric_c1(s, g), metric_c1(s, f), 1e-12);
    // The entrywise maximum is not unitarily invariant; it can grow by at most a factor r.
    EXPECT_LE(metric_c2(g), 4.0 * metric_c2(f) + 1e-15);
}

TEST(MetricC2, TrivialCases)
{
    EXPECT_LT(metric_c2(GridSamples::constant(CMatrix::Identity(2, 2), 16)), 1e-16);
    GridSamples delay(2, 16);
    for (int j = 0; j < 16; ++j) delay.node(j) = CMatrix::Identity(2, 2) * std::conj(delay.point(j));
    EXPECT_NEAR(metric_c2(delay), 1.0, 1e-15);
}

TEST(OuterCheck, IdentityAndOuterDiagonal)
{
    EXPECT_EQ(outer_check(GridSamples::constant(CMatrix::Identity(3, 3), 16)), 0.0);
    LaurentMatrixPoly p(2, 0, 1);
    p.coeff(0) = CMatrix::Identity(2, 2);
    p.coeff(1)(0, 0) = 0.5;
    EXPECT_LT(outer_check(to_grid(p, 64)), 1e-10);
}

TEST(OuterCheck, InnerFactorIsFlagged)
{
    LaurentMatrixPoly p(2, 0, 1);
    p.coeff(1) = CMatrix::Identity(2, 2);
    try {
        outer_check(to_grid(p, 64));
        FAIL() << "expected DetVanishes";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DetVanishes);
    }
}

TEST(OuterCheck, ZeroDeterminantNamesTheNode)
{
    auto g = GridSamples::constant(CMatrix::Identity(2, 2), 8);
    g.node(5).setZero();
    try {
        outer_check(g);
        FAIL() << "expected DetVanishes";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DetVanishes);
        EXPECT_EQ(e.context().node, 5);
    }
}

TEST(Benchmark, ScalarRatioIsNearOne)
{
    BenchmarkConfig cfg;
    cfg.dims = {1};
    cfg.n = 2;
    cfg.grid = 64;
    cfg.repetitions = 3;
    const auto report = benchmark(cfg);
    ASSERT_EQ(report.rows.size(), 1u);
    ASSERT_TRUE(report.rows[0].ratio.has_value());
    EXPECT_GT(*report.rows[0].ratio, 0.2);
    EXPECT_LT(*report.rows[0].ratio, 5.0);
    EXPECT_FALSE(report.machine.empty());
}

TEST(Benchmark, SingleAlgorithmHasNoRatio)
{
    BenchmarkConfig cfg;
    cfg.dims = {2, 4};
    cfg.n = 1;
    cfg.grid = 32;
    cfg.algorithms = {Algorithm::Classic};
    cfg.warmup = false;
    const auto report = benchmark(cfg);
    ASSERT_EQ(report.rows.size(), 2u);
    for (const auto& row : report.rows) {
        EXPECT_FALSE(row.ratio.has_value());
        ASSERT_EQ(row.timings.size(), 1u);
        EXPECT_LT(row.timings[0].c1, 1e-12);
    }
    const auto doc = to_json(report);
    EXPECT_EQ(doc["rows"].size(), 2u);
    EXPECT_TRUE(doc["rows"][0]["ratio"].is_null());
    EXPECT_EQ(doc["config"]["algorithms"][0], "classic");
}

TEST(Report, JsonCarriesTheSchema)
{
    const auto result = doubling_factorize(generate_density(small_config()));
    const auto doc = to_json(result.report, 0.0);
    EXPECT_EQ(doc["status"], "ok");
    EXPECT_EQ(doc["algorithm"], "doubling");
    EXPECT_EQ(doc["library"]["version"], std::string(library_version));
    EXPECT_EQ(doc["config"]["r"], 4);
    EXPECT_EQ(doc["config"]["grid"], 64);
    EXPECT_DOUBLE_EQ(doc["metrics"]["c1"].get<double>(), result.report.c1);
    EXPECT_TRUE(doc["timings"].contains("total"));
    EXPECT_EQ(doc["residuals"].size(), result.report.steps.size());
    for (const auto& step : doc["residuals"]) EXPECT_GE(step["paraunitary"].get<double>(), 0.0);
}

TEST(Report, ErrorDocumentNamesTheFailure)
{
    ErrorContext ctx;
    ctx.level = 4;
    ctx.block = 1;
    const auto doc = to_json(Error(ErrorCode::LevelFailed, "boom", ctx));
    EXPECT_EQ(doc["status"], "failed");
    EXPECT_EQ(doc["error"]["code"], "LevelFailed");
    EXPECT_EQ(doc["error"]["level"], 4);
    EXPECT_EQ(doc["error"]["block"], 1);
    EXPECT_FALSE(doc["error"].contains("stage"));
}
