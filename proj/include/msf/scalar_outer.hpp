#pragma once

#include <span>
#include <vector>

#include "msf/laurent.hpp"

namespace msf {

/// Outer spectral factor of a positive scalar density sampled on the grid.
struct ScalarFactor {
    std::vector<Complex> samples;  // s+(z_j), j = 0..N_g-1
    std::vector<Complex> coeffs;   // Taylor coefficients 0..N_g/2-1 of s+
};

inline constexpr double default_paley_wiener_floor = -30.0;

/// Cepstral realization of the exponential formula: s+ = exp(P+ log s) with the
/// constant cepstral term halved. The Nyquist term is split evenly between the
/// analytic and anti-analytic halves so that |s+|^2 = s holds exactly on the grid.
/// Throws NonPositiveSample (with the node index) and OverflowInExp.
ScalarFactor scalar_factorize(std::span<const double> density);

/// Grid mean of log s. Callers compare it against a floor such as
/// default_paley_wiener_floor. Non-positive samples give -inf.
double paley_wiener_check(std::span<const double> density);

/// max |negative-power coefficient| / max |coefficient| of s+ on its own grid.
double analytic_residual(const ScalarFactor& factor);

}  // namespace msf
