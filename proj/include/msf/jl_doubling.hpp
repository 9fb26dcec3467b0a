#pragma once

#include "msf/factor.hpp"

namespace msf {

struct PaddedDensity {
    GridSamples density;
    int pad_count = 0;
};

/// Embeds S in the leading block of a 2^p-dimensional density with identity
/// on the remaining diagonal (2^p the smallest power of two >= r).
PaddedDensity pad_to_pow2(const GridSamples& density);

/// Leading dim x dim block of every node.
GridSamples strip_padding(const GridSamples& factor, int dim);

/// Block-doubling driver. Levels run with block sizes M = 1, 2, 4, ...; at each
/// level superblock k (rows and columns 2Mk .. 2Mk + 2M) is completed with
/// (M, m = 2) and its two block columns are updated from row 2Mk down. The
/// superblocks of a level are independent and run on config.threads workers.
/// Failures are rethrown as LevelFailed with context.level = M, context.block = k.
FactorResult doubling_factorize(const GridSamples& density, const FactorConfig& config = {});

/// Agreement of two factors up to a constant unitary right factor.
struct UnitaryGap {
    /// max_j |W(z_j) - W(z_0)|_inf for W(z) = a(z)^{-1} b(z).
    double deviation = 0.0;
    /// |W(z_0) W(z_0)^H - I|_inf.
    double unitarity = 0.0;
};

UnitaryGap constant_unitary_gap(const GridSamples& a, const GridSamples& b);

/// Runs both drivers and returns constant_unitary_gap(classic, doubling).deviation.
double equivalence_to_classic(const GridSamples& density, const FactorConfig& config = {});

}  // namespace msf
