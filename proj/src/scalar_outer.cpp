#include "msf/scalar_outer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "msf/error.hpp"

namespace msf {

ScalarFactor scalar_factorize(std::span<const double> density)
{
    const int n = static_cast<int>(density.size());
    if (n < 2 || !is_pow2(n))
        throw Error(ErrorCode::InvalidArgument, "scalar density needs a power-of-two grid");

    std::vector<Complex> cepstrum(n);
    for (int j = 0; j < n; ++j) {
        const double s = density[j];
        if (!(s > 0.0) || !std::isfinite(s)) {
            ErrorContext ctx;
            ctx.node = j;
            throw Error(ErrorCode::NonPositiveSample,
                        "density sample " + std::to_string(s) + " at node " + std::to_string(j), ctx);
        }
        cepstrum[j] = std::log(s);
    }
    detail::transform_inplace(cepstrum, n, 1, detail::Transform::Analysis);

    const int half = n / 2;
    std::vector<Complex> phase(n, Complex{});
    phase[0] = 0.5 * cepstrum[0];
    for (int k = 1; k < half; ++k) phase[k] = cepstrum[k];
    phase[half] = 0.5 * cepstrum[half];
    detail::transform_inplace(phase, n, 1, detail::Transform::Synthesis);

    ScalarFactor out;
    out.samples.resize(n);
    for (int j = 0; j < n; ++j) {
        out.samples[j] = std::exp(phase[j]);
        if (!std::isfinite(out.samples[j].real()) || !std::isfinite(out.samples[j].imag()) ||
            std::abs(out.samples[j]) == 0.0) {
            ErrorContext ctx;
            ctx.node = j;
            throw Error(ErrorCode::OverflowInExp,
                        "dynamic range of the density too large at node " + std::to_string(j), ctx);
        }
    }

    std::vector<Complex> coeffs = out.samples;
    detail::transform_inplace(coeffs, n, 1, detail::Transform::Analysis);
    out.coeffs.assign(coeffs.begin(), coeffs.begin() + half);
    return out;
}

double paley_wiener_check(std::span<const double> density)
{
    if (density.empty()) return 0.0;
    double sum = 0.0;
    for (double s : density) sum += s > 0.0 ? std::log(s) : -INFINITY;
    return sum / static_cast<double>(density.size());
}

double analytic_residual(const ScalarFactor& factor)
{
    const int n = static_cast<int>(factor.samples.size());
    std::vector<Complex> c = factor.samples;
    detail::transform_inplace(c, n, 1, detail::Transform::Analysis);
    double peak = 0.0;
    double tail = 0.0;
    for (int k = 0; k < n; ++k) peak = std::max(peak, std::abs(c[k]));
    for (int k = n / 2 + 1; k < n; ++k) tail = std::max(tail, std::abs(c[k]));
    return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace msf
