#pragma once

#include <vector>

#include "msf/laurent.hpp"
#include "msf/scalar_outer.hpp"

namespace msf {

struct SeedOptions {
    /// Allowed |S - S^H|_inf relative to max_j |S(z_j)|_inf.
    double hermitian_tol = 1e-10;
    /// Cholesky pivots must exceed this times the mean diagonal of S.
    double pivot_floor = 1e-12;
    double paley_wiener_floor = default_paley_wiener_floor;
};

/// Lower-triangular Q with Q Q^H = S at every node and outer scalar factors on
/// the diagonal. Entries below the diagonal are in general not analytic.
struct TriangularSeed {
    GridSamples q;
    std::vector<ScalarFactor> diagonal;
};

/// Pointwise Cholesky followed by a unimodular rotation of each column that
/// turns the diagonal entry into the outer factor of its squared modulus.
/// Throws NotHermitian(node), NotPositiveDefinite(node, pivot), PaleyWienerFail(index).
TriangularSeed triangular_seed(const GridSamples& density, const SeedOptions& options = {});

}  // namespace msf
