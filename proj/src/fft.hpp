#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace msf::detail {

enum class Transform {
    /// out[j] = sum_k in[k] exp(+2 pi i jk / n): coefficients -> samples.
    Synthesis,
    /// out[k] = (1/n) sum_j in[j] exp(-2 pi i jk / n): samples -> coefficients.
    Analysis,
};

/// In-place length-n transform of `batch` interleaved sequences; element k of
/// sequence s lives at data[k * batch + s]. Safe to call from several threads.
void transform_inplace(std::span<std::complex<double>> data, int n, int batch, Transform kind);

}  // namespace msf::detail
