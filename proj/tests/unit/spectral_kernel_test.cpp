#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "gfc/error.hpp"
#include "gfc/spectral_kernel.hpp"
#include "support/oracles.hpp"

namespace gfc {
namespace {

using testing::NaiveDft;
using testing::Unflatten;

// Corner-placed Dirac and Laplacian kernels, written out independently.
std::vector<double> CornerDirac(const Shape& padded) {
  std::vector<double> d(padded.size(), 0.0);
  d[padded.rank() == 2 ? padded[1] + 1 : (padded[1] + 1) * padded[2] + 1] = 1.0;
  return d;
}

std::vector<double> CornerLaplace2D(const Shape& padded) {
  std::vector<double> l(padded.size(), 0.0);
  const double block[3][3] = {{0, 1, 0}, {1, -4, 1}, {0, 1, 0}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) l[r * padded[1] + c] = block[r][c];
  return l;
}

std::vector<double> CornerLaplace3D(const Shape& padded) {
  std::vector<double> l(padded.size(), 0.0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> double& {
    return l[(i * padded[1] + j) * padded[2] + k];
  };
  at(1, 1, 1) = -6;
  at(0, 1, 1) = at(2, 1, 1) = at(1, 0, 1) = at(1, 2, 1) = at(1, 1, 0) = at(1, 1, 2) = 1;
  return l;
}

TEST(SpectralKernelTest, DcEntryIsZero) {
  for (const Shape& s : {Shape{3, 3}, Shape{8, 8}, Shape{5, 9}, Shape{4, 4, 4}}) {
    EXPECT_EQ(BuildGreenKernel(s).spectrum()[0], std::complex<double>(0.0));
  }
}

TEST(SpectralKernelTest, DefaultPadIsFour) {
  EXPECT_EQ(kDefaultPad, 4u);
  const SpectralKernel k = BuildGreenKernel(Shape{8, 8});
  EXPECT_EQ(k.pad(), 4u);
  EXPECT_EQ(k.padded_shape(), Shape({16, 16}));
  EXPECT_EQ(k.dim(), 2u);
}

TEST(SpectralKernelTest, MatchesNaiveDftAtNyquistRow) {
  const SpectralKernel k = BuildGreenKernel(Shape{8, 8}, 4);
  const Shape padded = k.padded_shape();
  const auto dirac = NaiveDft(CornerDirac(padded), padded);
  const auto laplace = NaiveDft(CornerLaplace2D(padded), padded);
  const std::size_t idx = 8 * padded[1] + 0;  // (u, v) = (8, 0)
  const std::complex<double> expected = dirac[idx] / laplace[idx];
  EXPECT_LE(std::abs(k.spectrum()[idx] - expected), 1e-12 * std::abs(expected));
  EXPECT_NEAR(expected.real(), -1.0 / 4.0, 1e-12);  // 1 / (2 cos(pi) + 2 - 4)
}

TEST(SpectralKernelTest, MatchesNaiveDftEverywhere3D) {
  const SpectralKernel k = BuildGreenKernel(Shape{3, 4, 3}, 1);
  const Shape padded = k.padded_shape();
  const auto dirac = NaiveDft(CornerDirac(padded), padded);
  const auto laplace = NaiveDft(CornerLaplace3D(padded), padded);
  for (std::size_t i = 1; i < padded.size(); ++i) {
    const std::complex<double> expected = dirac[i] / laplace[i];
    EXPECT_LE(std::abs(k.spectrum()[i] - expected), 1e-12 * std::abs(expected)) << i;
  }
}

TEST(SpectralKernelTest, EqualsReciprocalLaplacianEigenvalue) {
  // Dirac and stencil share the centre (1,1), so the ratio is real.
  const SpectralKernel k = BuildGreenKernel(Shape{5, 7}, 2);
  const Shape& padded = k.padded_shape();
  for (std::size_t i = 1; i < padded.size(); ++i) {
    const double lambda = testing::PeriodicLaplacianEigenvalue(Unflatten(i, padded), padded);
    ASSERT_LT(lambda, 0.0);
    EXPECT_NEAR(k.spectrum()[i].real(), 1.0 / lambda, 1e-12 * std::abs(1.0 / lambda));
    EXPECT_NEAR(k.spectrum()[i].imag(), 0.0, 1e-12 * std::abs(1.0 / lambda));
  }
}

TEST(SpectralKernelTest, FiniteAndSymmetricUnderNegation) {
  for (const Shape& s : {Shape{3, 3}, Shape{6, 11}, Shape{3, 5, 4}}) {
    for (std::size_t pad : {1u, 4u}) {
      const SpectralKernel k = BuildGreenKernel(s, pad);
      const Shape& padded = k.padded_shape();
      for (std::size_t i = 0; i < padded.size(); ++i) {
        ASSERT_TRUE(std::isfinite(k.spectrum()[i].real()) && std::isfinite(k.spectrum()[i].imag()));
        auto idx = Unflatten(i, padded);
        for (std::size_t a = 0; a < padded.rank(); ++a) idx[a] = (padded[a] - idx[a]) % padded[a];
        const auto neg = k.spectrum()[testing::Flatten(idx, padded)];
        EXPECT_NEAR(std::abs(k.spectrum()[i]), std::abs(neg), 1e-14 * (1.0 + std::abs(neg)));
      }
    }
  }
}

TEST(SpectralKernelTest, RejectsInvalidArguments) {
  try {
    (void)BuildGreenKernel(Shape{8, 8}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPad);
  }
  try {
    (void)BuildGreenKernel(Shape{2, 8}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionTooSmall);
  }
}

TEST(KernelCacheTest, RepeatedLookupsReturnSameEntry) {
  KernelCache cache;
  const auto a = cache.GetOrBuild(Shape{8, 8}, 4);
  const auto b = cache.GetOrBuild(Shape{8, 8}, 4);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(cache.size(), 1u);
  const SpectralKernel fresh = BuildGreenKernel(Shape{8, 8}, 4);
  for (std::size_t i = 0; i < fresh.spectrum().size(); ++i) EXPECT_EQ(a->spectrum()[i], fresh.spectrum()[i]);
}

TEST(KernelCacheTest, DistinctKeysGetDistinctEntries) {
  KernelCache cache;
  (void)cache.GetOrBuild(Shape{8, 8}, 4);
  (void)cache.GetOrBuild(Shape{8, 9}, 4);
  (void)cache.GetOrBuild(Shape{8, 8}, 2);
  (void)cache.GetOrBuild(Shape{8, 8}, 4, Precision::kSingle);
  EXPECT_EQ(cache.size(), 4u);
  cache.Clear();
  EXPECT_EQ(cache.size(), 0u);
}

TEST(KernelCacheTest, ConcurrentCallersSeeOneEntry) {
  KernelCache cache;
  std::vector<std::shared_ptr<const SpectralKernel>> seen(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t) {
    threads.emplace_back([&, t] { seen[t] = cache.GetOrBuild(Shape{24, 20}, 4); });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(cache.size(), 1u);
  for (const auto& k : seen) EXPECT_EQ(k.get(), seen.front().get());
}

TEST(KernelCacheTest, PropagatesBuildErrors) {
  KernelCache cache;
  EXPECT_THROW((void)cache.GetOrBuild(Shape{8, 8}, 0), Error);
  EXPECT_EQ(cache.size(), 0u);
}

}  // namespace
}  // namespace gfc
