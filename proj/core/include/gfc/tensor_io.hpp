#ifndef GFC_TENSOR_IO_HPP
#define GFC_TENSOR_IO_HPP

// GFT container, all integers little-endian:
//
//   offset 0   4 bytes   magic "GFT1"
//   offset 4   1 byte    dtype, 0 = float64, 1 = float32
//   offset 5   1 byte    ndim, 2..4
//   offset 6   ndim * 8  extents, uint64
//   then       payload   row-major IEEE-754 values
//
// Extents are read as H x W (ndim 2), C x H x W (ndim 3) or C x D x H x W
// (ndim 4), where C is the batch and channel axes collapsed into one. A 3D
// field is therefore always written with ndim 4.

#include <filesystem>

#include "gfc/field.hpp"

namespace gfc {

void WriteGft(const Field& field, const std::filesystem::path& path);
Field ReadGft(const std::filesystem::path& path);

// Binary P5 (grayscale) / P6 (RGB) images with maxval 255. Samples map to
// [0, 1] on read; on write they are scaled by 255, rounded and clamped.
Field ReadPnm(const std::filesystem::path& path);
void WritePnm(const Field& image, const std::filesystem::path& path);

}  // namespace gfc

#endif  // GFC_TENSOR_IO_HPP
