#ifndef GFC_CLONE_HPP
#define GFC_CLONE_HPP

#include <cstddef>

#include "gfc/field.hpp"
#include "gfc/spectral_kernel.hpp"

namespace gfc {

// Top-left corner of the patch inside the base image: x is the column, y the row.
struct PixelOffset {
  std::size_t x = 0;
  std::size_t y = 0;
};

// Seamless cloning in the gradient domain. Images are single 2D Fields with
// values in [0, 1]; `mask` has one channel and the patch's extent, and pixels
// with mask > 0.5 take their gradients from the patch. An edge uses the patch
// difference only when both of its pixels are masked. The base is framed with
// a zero ring, the mixed gradient field is integrated with the mean-zero
// solver and each channel is mapped affinely back onto the base's range.
Field GradientDomainClone(const Field& base, const Field& patch, const Field& mask, PixelOffset offset,
                          KernelCache& cache);
Field GradientDomainClone(const Field& base, const Field& patch, const Field& mask, PixelOffset offset);

// Base with masked patch pixels copied over verbatim.
Field NaivePaste(const Field& base, const Field& patch, const Field& mask, PixelOffset offset);

// Mean |image[p] - image[q]| over 4-neighbour pairs that straddle the mask
// boundary, averaged over channels.
double SeamGradientMetric(const Field& image, const Field& mask, PixelOffset offset);

}  // namespace gfc

#endif  // GFC_CLONE_HPP
