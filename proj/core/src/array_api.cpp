#include "gfc/array_api.hpp"

#include <string>

#include "gfc/error.hpp"

namespace gfc {
namespace {

Geometry GeometryOf(std::span<const std::size_t> shape, std::size_t count, Precision precision) {
  if (shape.size() != 4 && shape.size() != 5) {
    throw Error(ErrorCode::kLayout, "array rank must be 4 or 5, got " + std::to_string(shape.size()));
  }
  Geometry g;
  g.batch = shape[0];
  g.channels = shape[1];
  g.shape = Shape(std::vector<std::size_t>(shape.begin() + 2, shape.end()));
  g.precision = precision;
  if (g.element_count() != count) {
    throw Error(ErrorCode::kLayout, "array has " + std::to_string(count) + " elements, shape implies " +
                                        std::to_string(g.element_count()));
  }
  return g;
}

}  // namespace

Field FieldFromArray(std::span<const double> data, std::span<const std::size_t> shape) {
  const Geometry g = GeometryOf(shape, data.size(), Precision::kDouble);
  return Field::FromValues(g, std::vector<double>(data.begin(), data.end()));
}

Field FieldFromArray(std::span<const float> data, std::span<const std::size_t> shape) {
  const Geometry g = GeometryOf(shape, data.size(), Precision::kSingle);
  return Field::FromValues(g, std::vector<double>(data.begin(), data.end()));
}

std::vector<std::size_t> ArrayShape(const Field& field) {
  std::vector<std::size_t> shape{field.batch(), field.channels()};
  for (std::size_t d : field.shape().dims()) shape.push_back(d);
  return shape;
}

std::vector<double> FieldToArray(const Field& field) {
  return std::vector<double>(field.values().begin(), field.values().end());
}

void RequireContiguous(std::span<const std::size_t> shape, std::span<const std::ptrdiff_t> byte_strides,
                       std::size_t item_size) {
  if (shape.size() != byte_strides.size()) {
    throw Error(ErrorCode::kLayout, "stride count does not match rank");
  }
  auto expected = static_cast<std::ptrdiff_t>(item_size);
  for (std::size_t axis = shape.size(); axis-- > 0;) {
    // Extent-1 axes may carry any stride.
    if (shape[axis] != 1 && byte_strides[axis] != expected) {
      throw Error(ErrorCode::kLayout, "axis " + std::to_string(axis) + " is not C-contiguous");
    }
    expected *= static_cast<std::ptrdiff_t>(shape[axis]);
  }
}

}  // namespace gfc
