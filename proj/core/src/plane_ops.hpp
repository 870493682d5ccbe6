#ifndef GFC_SRC_PLANE_OPS_HPP
#define GFC_SRC_PLANE_OPS_HPP

// Stencil kernels on a single spatial plane. All of them take zero extension
// outside the grid unless noted.

#include <cstddef>
#include <span>

#include "gfc/field.hpp"

namespace gfc::detail {

// Calls fn(base, stride, n) once for every 1-D line of `shape` along `axis`;
// element i of the line lives at base + i * stride.
template <typename Fn>
void ForEachLine(const Shape& shape, std::size_t axis, Fn&& fn) {
  const std::size_t n = shape[axis];
  const std::size_t inner = shape.stride(axis);
  const std::size_t outer = shape.size() / (n * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t t = 0; t < inner; ++t) fn(o * n * inner + t, inner, n);
  }
}

// out[i] = in[i+1] - in[i]; the last entry of every line is -in[last].
inline void ForwardDiff(std::span<const double> in, const Shape& shape, std::size_t axis,
                        std::span<double> out) {
  ForEachLine(shape, axis, [&](std::size_t base, std::size_t s, std::size_t n) {
    for (std::size_t i = 0; i + 1 < n; ++i) out[base + i * s] = in[base + (i + 1) * s] - in[base + i * s];
    out[base + (n - 1) * s] = -in[base + (n - 1) * s];
  });
}

// out += transpose(ForwardDiff) in, i.e. out[i] += in[i-1] - in[i].
inline void AddForwardDiffAdjoint(std::span<const double> in, const Shape& shape, std::size_t axis,
                                  std::span<double> out) {
  ForEachLine(shape, axis, [&](std::size_t base, std::size_t s, std::size_t n) {
    out[base] -= in[base];
    for (std::size_t i = 1; i < n; ++i) out[base + i * s] += in[base + (i - 1) * s] - in[base + i * s];
  });
}

// out += backward difference along `axis`. The edge preceding index 0 is not
// stored; it is closed with -sum(line), the value it takes whenever the line
// is a forward difference of a zero-extended field.
inline void AddBackwardDiff(std::span<const double> in, const Shape& shape, std::size_t axis,
                            std::span<double> out) {
  ForEachLine(shape, axis, [&](std::size_t base, std::size_t s, std::size_t n) {
    double line_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) line_sum += in[base + i * s];
    for (std::size_t i = n - 1; i >= 1; --i) out[base + i * s] += in[base + i * s] - in[base + (i - 1) * s];
    out[base] += in[base] + line_sum;
  });
}

// out = transpose(AddBackwardDiff) in: out[i] = in[i] - in[i+1] + in[0].
inline void BackwardDiffAdjoint(std::span<const double> in, const Shape& shape, std::size_t axis,
                                std::span<double> out) {
  ForEachLine(shape, axis, [&](std::size_t base, std::size_t s, std::size_t n) {
    const double first = in[base];
    for (std::size_t i = 0; i + 1 < n; ++i) out[base + i * s] = in[base + i * s] - in[base + (i + 1) * s] + first;
    out[base + (n - 1) * s] = in[base + (n - 1) * s] + first;
  });
}

// 5-point (2D) / 7-point (3D) Laplacian: sum of neighbours - 2*rank*centre.
inline void Stencil(std::span<const double> in, const Shape& shape, std::span<double> out) {
  const double centre = -2.0 * static_cast<double>(shape.rank());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = centre * in[i];
  for (std::size_t axis = 0; axis < shape.rank(); ++axis) {
    ForEachLine(shape, axis, [&](std::size_t base, std::size_t s, std::size_t n) {
      for (std::size_t i = 0; i < n; ++i) {
        double neighbours = 0.0;
        if (i > 0) neighbours += in[base + (i - 1) * s];
        if (i + 1 < n) neighbours += in[base + (i + 1) * s];
        out[base + i * s] += neighbours;
      }
    });
  }
}

}  // namespace gfc::detail

#endif  // GFC_SRC_PLANE_OPS_HPP
