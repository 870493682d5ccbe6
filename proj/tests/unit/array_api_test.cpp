#include <gtest/gtest.h>

#include <vector>

#include "gfc/array_api.hpp"
#include "gfc/error.hpp"

namespace gfc {
namespace {

TEST(ArrayApiTest, RoundTripsDoubleArrays) {
  std::vector<double> data(2 * 3 * 4 * 5);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = 0.5 * static_cast<double>(i);
  const std::vector<std::size_t> shape{2, 3, 4, 5};
  const Field f = FieldFromArray(std::span<const double>(data), shape);
  EXPECT_EQ(f.batch(), 2u);
  EXPECT_EQ(f.channels(), 3u);
  EXPECT_EQ(f.shape(), Shape({4, 5}));
  EXPECT_EQ(ArrayShape(f), shape);
  EXPECT_EQ(FieldToArray(f), data);
  EXPECT_EQ(f.plane(1, 2)[0], data[(1 * 3 + 2) * 20]);
}

TEST(ArrayApiTest, FloatArraysBecomeSinglePrecision) {
  const std::vector<float> data(1 * 1 * 3 * 3 * 3, 0.1f);
  const std::vector<std::size_t> shape{1, 1, 3, 3, 3};
  const Field f = FieldFromArray(std::span<const float>(data), shape);
  EXPECT_EQ(f.precision(), Precision::kSingle);
  EXPECT_EQ(f.rank(), 3u);
  EXPECT_EQ(f[0], static_cast<double>(0.1f));
}

TEST(ArrayApiTest, RejectsBadShapes) {
  const std::vector<double> data(16);
  const std::vector<std::size_t> wrong_count{1, 1, 3, 3};
  const std::vector<std::size_t> wrong_rank{4, 4};
  const std::vector<std::size_t> too_small{1, 4, 2, 2};
  EXPECT_THROW((void)FieldFromArray(std::span<const double>(data), wrong_count), Error);
  EXPECT_THROW((void)FieldFromArray(std::span<const double>(data), wrong_rank), Error);
  EXPECT_THROW((void)FieldFromArray(std::span<const double>(data), too_small), Error);
}

TEST(ArrayApiTest, ContiguityCheck) {
  const std::vector<std::size_t> shape{2, 3, 4, 5};
  const std::vector<std::ptrdiff_t> c_order{480, 160, 40, 8};
  EXPECT_NO_THROW(RequireContiguous(shape, c_order, 8));
  const std::vector<std::ptrdiff_t> fortran{8, 16, 48, 192};
  try {
    RequireContiguous(shape, fortran, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLayout);
  }
  const std::vector<std::size_t> unit{1, 3, 4, 5};
  const std::vector<std::ptrdiff_t> any_batch{0, 160, 40, 8};
  EXPECT_NO_THROW(RequireContiguous(unit, any_batch, 8));
}

}  // namespace
}  // namespace gfc
