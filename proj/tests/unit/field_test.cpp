#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gfc/error.hpp"
#include "gfc/field.hpp"
#include "support/oracles.hpp"

namespace gfc {
namespace {

using testing::Geom;
using testing::RandomField;

Field Ramp(const Geometry& g, double start) {
  std::vector<double> v(g.element_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = start + static_cast<double>(i);
  return Field::FromValues(g, std::move(v));
}

TEST(FieldTest, FilledZeros2D) {
  const Field f = Field::Filled(Geom({4, 4}), 0.0);
  ASSERT_EQ(f.size(), 16u);
  for (double v : f.values()) EXPECT_EQ(v, 0.0);
}

TEST(FieldTest, FilledOnes3D) {
  const Field f = Field::Filled(Geom({3, 3, 3}), 1.0);
  ASSERT_EQ(f.size(), 27u);
  for (double v : f.values()) EXPECT_EQ(v, 1.0);
}

TEST(FieldTest, RejectsSpatialExtentBelowThree) {
  try {
    (void)Field::Filled(Geom({2, 4}), 0.0);
    FAIL() << "expected dimension-too-small";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionTooSmall);
  }
}

TEST(FieldTest, RejectsUnsupportedRankAndCounts) {
  EXPECT_THROW((void)Field::Filled(Geom({4, 4, 4, 4}), 0.0), Error);
  EXPECT_THROW((void)Field::Filled(Geom({4}), 0.0), Error);
  EXPECT_THROW((void)Field::Filled(Geom({4, 4}, 0), 0.0), Error);
  EXPECT_THROW((void)Field::Filled(Geom({4, 4}, 1, 0), 0.0), Error);
}

TEST(FieldTest, RejectsNonFiniteValues) {
  std::vector<double> v(9, 0.0);
  v[4] = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)Field::FromValues(Geom({3, 3}), v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
  v[4] = std::numeric_limits<double>::infinity();
  EXPECT_THROW((void)Field::FromValues(Geom({3, 3}), v), Error);
}

TEST(FieldTest, RejectsWrongLength) {
  EXPECT_THROW((void)Field::FromValues(Geom({3, 3}), std::vector<double>(8)), Error);
}

TEST(FieldTest, PlaneLayoutIsBatchChannelSpatial) {
  const Geometry g = Geom({3, 3}, 2, 2);
  const Field f = Ramp(g, 0.0);
  EXPECT_EQ(f.plane(0, 0)[0], 0.0);
  EXPECT_EQ(f.plane(0, 1)[0], 9.0);
  EXPECT_EQ(f.plane(1, 0)[0], 18.0);
  EXPECT_EQ(f.plane(1, 1)[8], 35.0);
  EXPECT_THROW((void)f.plane(2, 0), Error);
}

TEST(FieldTest, SinglePrecisionRoundsStoredValues) {
  Geometry g = Geom({3, 3});
  g.precision = Precision::kSingle;
  const Field f = Field::Filled(g, 0.1);
  EXPECT_EQ(f[0], static_cast<double>(0.1f));
}

TEST(FieldTest, AxpyIdentities) {
  std::mt19937_64 rng(1);
  const Geometry g = Geom({5, 6}, 2);
  const Field x = RandomField(g, rng), y = RandomField(g, rng);
  EXPECT_EQ(MaxAbsDiff(Axpy(0.0, x, y), y), 0.0);
  EXPECT_EQ(MaxAbsDiff(Axpy(1.0, x, Field::Zeros(g)), x), 0.0);
}

TEST(FieldTest, AxpyArithmetic) {
  const Geometry g = Geom({3, 3});
  const Field x = Ramp(g, 1.0);
  const Field out = Axpy(2.0, x, Field::Filled(g, 1.0));
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], 2.0 * (1.0 + i) + 1.0);
}

TEST(FieldTest, AxpyIsExactOnIntegers) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-1000000, 1000000);
  const Geometry g = Geom({7, 5});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xv(g.element_count()), yv(g.element_count());
    for (auto& v : xv) v = dist(rng);
    for (auto& v : yv) v = dist(rng);
    const double a = dist(rng) % 100;
    const Field out = Axpy(a, Field::FromValues(g, xv), Field::FromValues(g, yv));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const long long expected = static_cast<long long>(a) * static_cast<long long>(xv[i]) + static_cast<long long>(yv[i]);
      EXPECT_EQ(out[i], static_cast<double>(expected));
    }
  }
}

TEST(FieldTest, ShapeMismatchIsReported) {
  try {
    (void)Axpy(1.0, Field::Zeros(Geom({3, 3})), Field::Zeros(Geom({3, 4})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
  EXPECT_THROW((void)Inner(Field::Zeros(Geom({3, 3}, 2)), Field::Zeros(Geom({3, 3}))), Error);
}

TEST(FieldTest, InnerExamples) {
  std::mt19937_64 rng(3);
  const Geometry g = Geom({4, 4});
  EXPECT_EQ(Inner(Field::Zeros(g), RandomField(g, rng)), 0.0);
  EXPECT_EQ(Inner(Field::Filled(g, 1.0), Field::Filled(g, 1.0)), 16.0);
}

TEST(FieldTest, InnerMatchesExtendedPrecisionSum) {
  std::mt19937_64 rng(11);
  const Geometry g = Geom({8, 8});
  const Field x = RandomField(g, rng), y = RandomField(g, rng);
  long double oracle = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) oracle += static_cast<long double>(x[i]) * y[i];
  EXPECT_NEAR(Inner(x, y), static_cast<double>(oracle), 1e-12 * std::abs(static_cast<double>(oracle)));
}

TEST(FieldTest, InnerIsSymmetric) {
  std::mt19937_64 rng(5);
  for (std::size_t trial = 0; trial < 25; ++trial) {
    const Geometry g = Geom({3u + trial % 5, 4u + trial % 3}, 1 + trial % 2);
    const Field x = RandomField(g, rng), y = RandomField(g, rng);
    EXPECT_EQ(Inner(x, y), Inner(y, x));
  }
}

TEST(FieldTest, ReshapePreservesData) {
  const Field f = Ramp(Geom({3, 3}, 2, 3), 0.0);
  const Field r = f.Reshaped(1, 6);
  EXPECT_EQ(r.channels(), 6u);
  EXPECT_EQ(r.batch(), 1u);
  EXPECT_EQ(r[17], f[17]);
  EXPECT_THROW((void)f.Reshaped(1, 5), Error);
}

TEST(VectorFieldTest, EnforcesComponentInvariants) {
  const Field a = Field::Zeros(Geom({3, 3}));
  const Field b = Field::Zeros(Geom({3, 4}));
  EXPECT_NO_THROW(VectorField({a, a}));
  EXPECT_THROW(VectorField({a}), Error);
  EXPECT_THROW(VectorField({a, b}), Error);
  EXPECT_THROW(VectorField({a, a, a}), Error);  // rank 2 field, 3 components
  const Field c = Field::Zeros(Geom({3, 3, 3}));
  EXPECT_NO_THROW(VectorField({c, c, c}));
}

}  // namespace
}  // namespace gfc
