#include "gfc/spectral_kernel.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "fft.hpp"
#include "gfc/error.hpp"

namespace gfc {
namespace {

// Flat index of a point inside the leading 3x3[x3] block of `shape`.
std::size_t BlockIndex(const Shape& shape, std::span<const std::size_t> point) {
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < shape.rank(); ++axis) flat += point[axis] * shape.stride(axis);
  return flat;
}

}  // namespace

SpectralKernel BuildGreenKernel(const Shape& image_shape, std::size_t pad, Precision precision) {
  ValidateSpatialShape(image_shape);
  if (pad < 1) throw Error(ErrorCode::kInvalidPad, "pad must be >= 1, got " + std::to_string(pad));

  const Shape padded = image_shape.Grown(pad);
  const std::size_t n = padded.size();
  const std::size_t rank = padded.rank();

  std::vector<std::complex<double>> dirac(n), laplace(n);
  const std::vector<std::size_t> centre(rank, 1);
  dirac[BlockIndex(padded, centre)] = 1.0;
  laplace[BlockIndex(padded, centre)] = -2.0 * static_cast<double>(rank);
  for (std::size_t axis = 0; axis < rank; ++axis) {
    for (std::size_t offset : {std::size_t{0}, std::size_t{2}}) {
      std::vector<std::size_t> neighbour = centre;
      neighbour[axis] = offset;
      laplace[BlockIndex(padded, neighbour)] = 1.0;
    }
  }

  std::vector<std::complex<double>> dirac_hat(n), laplace_hat(n);
  detail::Fft(padded, detail::FftDirection::kForward, dirac, dirac_hat);
  detail::Fft(padded, detail::FftDirection::kForward, laplace, laplace_hat);

  // DC is 0/0; divide by 1 there and overwrite afterwards.
  laplace_hat[0] = 1.0;
  std::vector<std::complex<double>> spectrum(n);
  for (std::size_t k = 0; k < n; ++k) spectrum[k] = dirac_hat[k] / laplace_hat[k];
  spectrum[0] = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(spectrum[k].real()) || !std::isfinite(spectrum[k].imag())) {
      throw Error(ErrorCode::kNumerical, "Green's function spectrum is not finite");
    }
  }
  if (precision == Precision::kSingle) {
    for (auto& v : spectrum) v = std::complex<double>(std::complex<float>(v));
  }
  return SpectralKernel(image_shape, pad, padded, std::move(spectrum));
}

std::shared_ptr<const SpectralKernel> KernelCache::GetOrBuild(const Shape& image_shape,
                                                              std::size_t pad,
                                                              Precision precision) {
  Key key{std::vector<std::size_t>(image_shape.dims().begin(), image_shape.dims().end()), pad,
          precision};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto built = std::make_shared<const SpectralKernel>(BuildGreenKernel(image_shape, pad, precision));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(std::move(key), std::move(built));
  return it->second;
}

std::size_t KernelCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void KernelCache::Clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

KernelCache& DefaultKernelCache() {
  static KernelCache cache;
  return cache;
}

}  // namespace gfc
