#ifndef GFC_ARRAY_API_HPP
#define GFC_ARRAY_API_HPP

// Exchange of Fields with flat host arrays laid out (batch, channels,
// spatial...), row-major. This is the surface foreign-language bindings sit
// on; it performs no numerics beyond the copy.

#include <cstddef>
#include <span>
#include <vector>

#include "gfc/field.hpp"

namespace gfc {

// `shape` is (batch, channels, H, W) or (batch, channels, D, H, W).
Field FieldFromArray(std::span<const double> data, std::span<const std::size_t> shape);
// float32 arrays become single-precision Fields (stored as float, computed in double).
Field FieldFromArray(std::span<const float> data, std::span<const std::size_t> shape);

std::vector<std::size_t> ArrayShape(const Field& field);
std::vector<double> FieldToArray(const Field& field);

// Throws kLayout unless byte strides describe a C-contiguous array.
void RequireContiguous(std::span<const std::size_t> shape, std::span<const std::ptrdiff_t> byte_strides,
                       std::size_t item_size);

}  // namespace gfc

#endif  // GFC_ARRAY_API_HPP
