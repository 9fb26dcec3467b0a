#pragma once

#include "msf/factor.hpp"

namespace msf {

/// Column-by-column driver: after the triangular seed, stage m = 2..r makes
/// the leading m x m block analytic with a scalar (M = 1) completion built
/// from row m, then right-multiplies the first m columns by it.
/// Failures inside a stage are rethrown as StageFailed with context.stage = m.
FactorResult classic_factorize(const GridSamples& density, const FactorConfig& config = {});

}  // namespace msf
