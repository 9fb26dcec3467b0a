#pragma once

#include <span>
#include <string>
#include <vector>

#include "msf/laurent.hpp"
#include "msf/paraunitary.hpp"
#include "msf/triangular_seed.hpp"

namespace msf {

/// Settings shared by the classic and doubling drivers.
struct FactorConfig {
    /// Relative threshold of the tail rule that picks the truncation order N.
    double eps_tail = 1e-14;
    /// Upper bound on N; 0 means N_g / 2.
    int max_order = 0;
    SeedOptions seed;
    CompletionTolerances tolerances;
    /// Worker threads for independent superblocks (doubling only); 0 picks
    /// the number of available cores.
    int threads = 0;
    /// Keep every applied U.
    bool keep_history = false;
    /// Measure the analyticity / conservation invariants after each stage or level.
    bool check_invariants = false;
};

/// One application of a paraunitary completion.
struct StepRecord {
    int stage = 0;    // classic: m (number of columns made analytic); doubling: block size M
    int block = -1;   // doubling superblock index k, -1 for classic
    int order = 0;    // N; 0 means the step was skipped (nothing to repair)
    double paraunitary_residual = 0.0;
    double lemma_deviation = 0.0;
    double det_deviation = 0.0;
    double analytic_residual = 0.0;
    double seconds = 0.0;
};

/// Per-stage / per-level invariant measurements (check_invariants only).
struct InvariantRecord {
    int stage = 0;
    /// Anti-analytic residual of the blocks that should now be analytic.
    double analytic_residual = 0.0;
    /// max_j |Q Q^H - S|_inf.
    double conservation = 0.0;
    /// Largest entry in positions that must stay exactly zero.
    double upper_zero = 0.0;
};

struct FactorReport {
    std::string algorithm;
    int dim = 0;
    int padded_dim = 0;
    int grid = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double seed_seconds = 0.0;
    double procedure_seconds = 0.0;
    double total_seconds = 0.0;
    std::vector<double> level_seconds;
    std::vector<StepRecord> steps;
    std::vector<InvariantRecord> invariants;
    FactorConfig config;
};

struct FactorResult {
    GridSamples factor;
    FactorReport report;
    std::vector<LaurentMatrixPoly> history;
};

/// Smallest N <= cap such that every coefficient of power < -N in every zeta
/// is below eps_tail times the largest coefficient modulus of all zetas
/// (0 when the zetas have no negative part).
int tail_order(std::span<const LaurentMatrixPoly> zetas, double eps_tail, int cap);

/// Effective upper bound on N for a grid.
int order_cap(const FactorConfig& config, int grid);

}  // namespace msf
