#ifndef GFC_SPECTRAL_KERNEL_HPP
#define GFC_SPECTRAL_KERNEL_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <vector>

#include "gfc/field.hpp"

namespace gfc {

inline constexpr std::size_t kDefaultPad = 4;

// Frequency-domain Green's function of the discrete Laplacian on a padded
// periodic grid: DFT(dirac) / DFT(laplacian kernel), zero at DC.
class SpectralKernel {
 public:
  SpectralKernel(Shape image_shape, std::size_t pad, Shape padded_shape,
                 std::vector<std::complex<double>> spectrum)
      : image_shape_(std::move(image_shape)),
        pad_(pad),
        padded_shape_(std::move(padded_shape)),
        spectrum_(std::move(spectrum)) {}

  const Shape& image_shape() const noexcept { return image_shape_; }
  const Shape& padded_shape() const noexcept { return padded_shape_; }
  std::size_t pad() const noexcept { return pad_; }
  std::size_t dim() const noexcept { return padded_shape_.rank(); }

  // Full (not half) spectrum in row-major order over padded_shape().
  std::span<const std::complex<double>> spectrum() const noexcept { return spectrum_; }

 private:
  Shape image_shape_;
  std::size_t pad_;
  Shape padded_shape_;
  std::vector<std::complex<double>> spectrum_;
};

// Builds the kernel for images of `image_shape` zero-padded by `pad` cells on
// every side. The Dirac sits at index (1,1[,1]) and the Laplacian kernel
// [[0,1,0],[1,-4,1],[0,1,0]] (or the 7-point 3D stencil) fills the leading
// 3x3[x3] block, so both share the same centre and the ratio carries no phase.
// Throws kInvalidPad for pad < 1 and kDimensionTooSmall for bad shapes.
SpectralKernel BuildGreenKernel(const Shape& image_shape, std::size_t pad = kDefaultPad,
                                Precision precision = Precision::kDouble);

// Thread-safe memo of built kernels. Entries are immutable; concurrent misses
// on the same key may each build, but only the first insertion is kept and
// every caller receives that instance.
class KernelCache {
 public:
  std::shared_ptr<const SpectralKernel> GetOrBuild(const Shape& image_shape, std::size_t pad,
                                                   Precision precision = Precision::kDouble);

  std::size_t size() const;
  void Clear();

 private:
  using Key = std::tuple<std::vector<std::size_t>, std::size_t, Precision>;

  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const SpectralKernel>> entries_;
};

// Process-wide cache used when callers do not supply one.
KernelCache& DefaultKernelCache();

}  // namespace gfc

#endif  // GFC_SPECTRAL_KERNEL_HPP
