#ifndef GFC_SRC_FFT_HPP
#define GFC_SRC_FFT_HPP

#include <complex>
#include <span>

#include "gfc/field.hpp"

namespace gfc::detail {

enum class FftDirection { kForward, kInverse };

// Unnormalized out-of-place complex DFT over the full `shape`. Forward uses
// exp(-2*pi*i*k*n/N). Safe to call concurrently; plans are created once per
// (shape, direction) and shared. `in` and `out` must not overlap.
void Fft(const Shape& shape, FftDirection direction, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out);

}  // namespace gfc::detail

#endif  // GFC_SRC_FFT_HPP
