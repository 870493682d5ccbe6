#include <gtest/gtest.h>

#include "gfc/clone.hpp"
#include "gfc/error.hpp"
#include "support/clone_fixture.hpp"

namespace gfc {
namespace {

using testing::Geom;

TEST(CloneTest, SeamIsMuchSmootherThanNaivePaste) {
  const auto fx = testing::MakeCloneFixture();
  const Field naive = NaivePaste(fx.base, fx.patch, fx.mask, fx.offset);
  const Field cloned = GradientDomainClone(fx.base, fx.patch, fx.mask, fx.offset);
  const double seam_naive = SeamGradientMetric(naive, fx.mask, fx.offset);
  const double seam_clone = SeamGradientMetric(cloned, fx.mask, fx.offset);
  EXPECT_GT(seam_naive, 0.1);
  EXPECT_LE(seam_clone, 0.5 * seam_naive);
}

TEST(CloneTest, EmptyMaskReproducesBase) {
  const auto fx = testing::MakeCloneFixture();
  const Field empty = Field::Zeros(fx.mask.geometry());
  const Field cloned = GradientDomainClone(fx.base, fx.patch, empty, fx.offset);
  EXPECT_LE(MaxAbsDiff(cloned, fx.base) * 255.0, 1.0);
  EXPECT_LE(MaxAbsDiff(cloned, fx.base), 1e-9);
}

TEST(CloneTest, SelfCloneReproducesBase) {
  const auto fx = testing::MakeCloneFixture(1);
  const std::size_t ph = fx.patch.shape()[0], pw = fx.patch.shape()[1], w = fx.base.shape()[1];
  std::vector<double> region(ph * pw);
  for (std::size_t r = 0; r < ph; ++r)
    for (std::size_t c = 0; c < pw; ++c) region[r * pw + c] = fx.base[(r + fx.offset.y) * w + c + fx.offset.x];
  const Field patch = Field::FromValues(Geom({ph, pw}), std::move(region));
  const Field cloned = GradientDomainClone(fx.base, patch, Field::Filled(fx.mask.geometry(), 1.0), fx.offset);
  EXPECT_LE(MaxAbsDiff(cloned, fx.base) * 255.0, 1.0);
}

TEST(CloneTest, NaivePasteCopiesMaskedPixelsOnly) {
  const auto fx = testing::MakeCloneFixture(1);
  const Field naive = NaivePaste(fx.base, fx.patch, fx.mask, fx.offset);
  const std::size_t pw = fx.patch.shape()[1], w = fx.base.shape()[1];
  EXPECT_EQ(naive[(fx.offset.y + 10) * w + fx.offset.x + 12], fx.patch[10 * pw + 12]);
  EXPECT_EQ(naive[fx.offset.y * w + fx.offset.x], fx.base[fx.offset.y * w + fx.offset.x]);
}

TEST(CloneTest, RejectsPatchOutsideBase) {
  const auto fx = testing::MakeCloneFixture();
  EXPECT_THROW((void)GradientDomainClone(fx.base, fx.patch, fx.mask, PixelOffset{50, 0}), Error);
  EXPECT_THROW((void)GradientDomainClone(fx.base, fx.patch, Field::Zeros(Geom({20, 24}, 3)), fx.offset), Error);
  EXPECT_THROW((void)GradientDomainClone(fx.base, Field::Zeros(Geom({20, 24})), fx.mask, fx.offset), Error);
}

}  // namespace
}  // namespace gfc
