#ifndef GFC_FIELD_HPP
#define GFC_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace gfc {

// Storage precision of a Field. Arithmetic is always carried in double;
// single-precision fields round every stored value to the nearest float.
enum class Precision : std::uint8_t { kDouble = 0, kSingle = 1 };

// Spatial extents of a 2D (H x W) or 3D (D x H x W) grid, row-major.
// Axis 0 is the "x" axis of the differential operators, axis 1 is "y",
// axis 2 is "z".
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<std::size_t> dims) : dims_(dims) {}
  explicit Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {}

  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t axis) const { return dims_.at(axis); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }

  // Product of all extents.
  std::size_t size() const noexcept;

  // Distance in elements between neighbours along `axis`.
  std::size_t stride(std::size_t axis) const;

  // Every extent grown by `amount` on both sides.
  Shape Grown(std::size_t amount) const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

// Throws kDimensionTooSmall unless rank is 2 or 3 and every extent is >= 3.
void ValidateSpatialShape(const Shape& shape);

struct Geometry {
  Shape shape;
  std::size_t batch = 1;
  std::size_t channels = 1;
  Precision precision = Precision::kDouble;

  std::size_t plane_size() const noexcept { return shape.size(); }
  std::size_t element_count() const noexcept { return batch * channels * shape.size(); }

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

// Dense real grid with layout (batch, channel, spatial...). Immutable once
// built; every operation in the library returns a new Field.
class Field {
 public:
  // Every element equal to `fill`.
  static Field Filled(const Geometry& geometry, double fill);
  static Field Zeros(const Geometry& geometry) { return Filled(geometry, 0.0); }

  // Takes ownership of `values`; rejects wrong length and non-finite values.
  static Field FromValues(const Geometry& geometry, std::vector<double> values);

  const Geometry& geometry() const noexcept { return geometry_; }
  const Shape& shape() const noexcept { return geometry_.shape; }
  std::size_t rank() const noexcept { return geometry_.shape.rank(); }
  std::size_t batch() const noexcept { return geometry_.batch; }
  std::size_t channels() const noexcept { return geometry_.channels; }
  Precision precision() const noexcept { return geometry_.precision; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t flat_index) const { return values_[flat_index]; }

  // The contiguous spatial plane of one (batch, channel) pair.
  std::span<const double> plane(std::size_t batch_index, std::size_t channel) const;

  // Same data re-labelled with a different batch/channel split; the product
  // batch * channels must be unchanged.
  Field Reshaped(std::size_t batch, std::size_t channels) const;

 private:
  Field(Geometry geometry, std::vector<double> values)
      : geometry_(std::move(geometry)), values_(std::move(values)) {}

  Geometry geometry_;
  std::vector<double> values_;
};

// a * x + y, elementwise.
Field Axpy(double a, const Field& x, const Field& y);

// Sum of elementwise products.
double Inner(const Field& x, const Field& y);

// Euclidean norm of all values.
double Norm(const Field& x);

// Largest |x - y| over all elements.
double MaxAbsDiff(const Field& x, const Field& y);

void RequireSameGeometry(const Field& x, const Field& y, const char* context);

// One Field per spatial axis, all of identical geometry. Component k holds the
// derivative along axis k.
class VectorField {
 public:
  explicit VectorField(std::vector<Field> components);

  std::size_t size() const noexcept { return components_.size(); }
  const Field& operator[](std::size_t axis) const { return components_.at(axis); }
  const Geometry& geometry() const noexcept { return components_.front().geometry(); }
  const std::vector<Field>& components() const noexcept { return components_; }

 private:
  std::vector<Field> components_;
};

}  // namespace gfc

#endif  // GFC_FIELD_HPP
