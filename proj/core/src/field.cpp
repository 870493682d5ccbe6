#include "gfc/field.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "gfc/error.hpp"

namespace gfc {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionTooSmall: return "dimension-too-small";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kInvalidPad: return "invalid-pad";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kChannelMismatch: return "channel-mismatch";
    case ErrorCode::kIndivisibleChannels: return "indivisible-channel-count";
    case ErrorCode::kLayout: return "layout";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFileNotFound: return "file not found";
    case ErrorCode::kBadMagic: return "bad-magic";
    case ErrorCode::kUnknownDtype: return "unknown-dtype";
    case ErrorCode::kTruncatedPayload: return "truncated-payload";
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kNumerical: return "numerical";
  }
  return "unknown";
}

std::size_t Shape::size() const noexcept {
  if (dims_.empty()) return 0;
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t Shape::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t k = axis + 1; k < dims_.size(); ++k) s *= dims_[k];
  return s;
}

Shape Shape::Grown(std::size_t amount) const {
  std::vector<std::size_t> grown(dims_);
  for (auto& d : grown) d += 2 * amount;
  return Shape(std::move(grown));
}

void ValidateSpatialShape(const Shape& shape) {
  if (shape.rank() != 2 && shape.rank() != 3) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "spatial rank must be 2 or 3, got " + std::to_string(shape.rank()));
  }
  for (std::size_t axis = 0; axis < shape.rank(); ++axis) {
    if (shape[axis] < 3) {
      throw Error(ErrorCode::kDimensionTooSmall,
                  "axis " + std::to_string(axis) + " has extent " + std::to_string(shape[axis]) +
                      ", minimum is 3");
    }
  }
}

namespace {

void ValidateGeometry(const Geometry& g) {
  ValidateSpatialShape(g.shape);
  if (g.batch < 1 || g.channels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "batch and channel counts must be >= 1");
  }
}

}  // namespace

Field Field::Filled(const Geometry& geometry, double fill) {
  ValidateGeometry(geometry);
  if (!std::isfinite(fill)) throw Error(ErrorCode::kNonFinite, "fill value is not finite");
  if (geometry.precision == Precision::kSingle) fill = static_cast<float>(fill);
  return Field(geometry, std::vector<double>(geometry.element_count(), fill));
}

Field Field::FromValues(const Geometry& geometry, std::vector<double> values) {
  ValidateGeometry(geometry);
  if (values.size() != geometry.element_count()) {
    throw Error(ErrorCode::kShapeMismatch, "expected " + std::to_string(geometry.element_count()) +
                                               " values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFinite, "value at flat index " + std::to_string(i) + " is not finite");
    }
  }
  if (geometry.precision == Precision::kSingle) {
    for (auto& v : values) v = static_cast<float>(v);
  }
  return Field(geometry, std::move(values));
}

std::span<const double> Field::plane(std::size_t batch_index, std::size_t channel) const {
  if (batch_index >= batch() || channel >= channels()) {
    throw Error(ErrorCode::kInvalidArgument, "plane index out of range");
  }
  const std::size_t n = geometry_.plane_size();
  return std::span<const double>(values_).subspan((batch_index * channels() + channel) * n, n);
}

Field Field::Reshaped(std::size_t new_batch, std::size_t new_channels) const {
  if (new_batch * new_channels != batch() * channels() || new_batch == 0) {
    throw Error(ErrorCode::kShapeMismatch, "reshape must preserve batch * channels");
  }
  Geometry g = geometry_;
  g.batch = new_batch;
  g.channels = new_channels;
  return Field(std::move(g), values_);
}

void RequireSameGeometry(const Field& x, const Field& y, const char* context) {
  if (x.shape() != y.shape() || x.batch() != y.batch() || x.channels() != y.channels()) {
    throw Error(ErrorCode::kShapeMismatch, std::string(context) + ": operands differ in geometry");
  }
}

Field Axpy(double a, const Field& x, const Field& y) {
  RequireSameGeometry(x, y, "axpy");
  std::vector<double> out(y.values().begin(), y.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * x[i];
  return Field::FromValues(y.geometry(), std::move(out));
}

double Inner(const Field& x, const Field& y) {
  RequireSameGeometry(x, y, "inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double Norm(const Field& x) { return std::sqrt(Inner(x, x)); }

double MaxAbsDiff(const Field& x, const Field& y) {
  RequireSameGeometry(x, y, "max-abs-diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

VectorField::VectorField(std::vector<Field> components) : components_(std::move(components)) {
  if (components_.size() != 2 && components_.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "a vector field has 2 or 3 components");
  }
  const Geometry& g = components_.front().geometry();
  if (g.shape.rank() != components_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "component count must equal the spatial rank");
  }
  for (const auto& c : components_) {
    if (!(c.geometry() == g)) {
      throw Error(ErrorCode::kShapeMismatch, "vector field components differ in geometry");
    }
  }
}

}  // namespace gfc
