#include "gfc/clone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gfc/diff_ops.hpp"
#include "gfc/error.hpp"
#include "gfc/solver.hpp"

namespace gfc {
namespace {

constexpr double kMaskThreshold = 0.5;

struct CloneGeometry {
  std::size_t height;
  std::size_t width;
  std::size_t patch_height;
  std::size_t patch_width;
  std::size_t channels;
  PixelOffset offset;
  const Field* mask;

  // Whether base pixel (r, c) is covered by a masked patch pixel.
  bool Masked(std::size_t r, std::size_t c) const {
    if (r < offset.y || c < offset.x) return false;
    const std::size_t pr = r - offset.y;
    const std::size_t pc = c - offset.x;
    if (pr >= patch_height || pc >= patch_width) return false;
    return (*mask)[pr * patch_width + pc] > kMaskThreshold;
  }
};

CloneGeometry Validate(const Field& base, const Field& patch, const Field& mask, PixelOffset offset) {
  if (base.rank() != 2 || patch.rank() != 2 || mask.rank() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "cloning works on 2D images");
  }
  if (base.batch() != 1 || patch.batch() != 1 || mask.batch() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "cloning works on single images");
  }
  if (patch.channels() != base.channels()) {
    throw Error(ErrorCode::kChannelMismatch, "patch and base differ in channel count");
  }
  if (mask.channels() != 1) throw Error(ErrorCode::kChannelMismatch, "mask must be grayscale");
  if (mask.shape() != patch.shape()) {
    throw Error(ErrorCode::kShapeMismatch, "mask and patch differ in size");
  }
  const std::size_t h = base.shape()[0], w = base.shape()[1];
  const std::size_t ph = patch.shape()[0], pw = patch.shape()[1];
  if (offset.y + ph > h || offset.x + pw > w) {
    throw Error(ErrorCode::kInvalidArgument, "patch at offset (" + std::to_string(offset.x) + "," +
                                                 std::to_string(offset.y) + ") does not fit inside the base");
  }
  return CloneGeometry{h, w, ph, pw, base.channels(), offset, &mask};
}

}  // namespace

Field GradientDomainClone(const Field& base, const Field& patch, const Field& mask, PixelOffset offset,
                          KernelCache& cache) {
  const CloneGeometry geo = Validate(base, patch, mask, offset);
  const std::size_t fh = geo.height + 2, fw = geo.width + 2;
  const std::size_t framed_pixels = fh * fw;
  const std::size_t pixels = geo.height * geo.width;

  // Framed coordinates (r, c) map to base (r - 1, c - 1); the ring is zero.
  auto base_at = [&](std::size_t ch, std::size_t r, std::size_t c) -> double {
    if (r == 0 || c == 0 || r > geo.height || c > geo.width) return 0.0;
    return base[ch * pixels + (r - 1) * geo.width + (c - 1)];
  };
  auto masked = [&](std::size_t r, std::size_t c) {
    if (r == 0 || c == 0 || r > geo.height || c > geo.width) return false;
    return geo.Masked(r - 1, c - 1);
  };
  auto patch_at = [&](std::size_t ch, std::size_t r, std::size_t c) {
    const std::size_t pr = r - 1 - offset.y, pc = c - 1 - offset.x;
    return patch[ch * geo.patch_height * geo.patch_width + pr * geo.patch_width + pc];
  };

  Geometry framed;
  framed.shape = Shape({fh, fw});
  framed.channels = geo.channels;
  std::vector<double> du(geo.channels * framed_pixels), dv(geo.channels * framed_pixels);
  for (std::size_t ch = 0; ch < geo.channels; ++ch) {
    for (std::size_t r = 0; r < fh; ++r) {
      for (std::size_t c = 0; c < fw; ++c) {
        const std::size_t i = ch * framed_pixels + r * fw + c;
        const double here = base_at(ch, r, c);
        du[i] = (r + 1 < fh ? base_at(ch, r + 1, c) : 0.0) - here;
        dv[i] = (c + 1 < fw ? base_at(ch, r, c + 1) : 0.0) - here;
        if (masked(r, c) && r + 1 < fh && masked(r + 1, c)) du[i] = patch_at(ch, r + 1, c) - patch_at(ch, r, c);
        if (masked(r, c) && c + 1 < fw && masked(r, c + 1)) dv[i] = patch_at(ch, r, c + 1) - patch_at(ch, r, c);
      }
    }
  }
  const VectorField guidance(
      {Field::FromValues(framed, std::move(du)), Field::FromValues(framed, std::move(dv))});
  const Field potential =
      SolveLaplacian(Divergence(guidance), SolverConfig{kDefaultPad, ConstantPolicy::kMeanZero}, cache);

  Geometry out_geometry = base.geometry();
  std::vector<double> out(base.size());
  for (std::size_t ch = 0; ch < geo.channels; ++ch) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double base_lo = lo, base_hi = hi;
    for (std::size_t r = 0; r < geo.height; ++r) {
      for (std::size_t c = 0; c < geo.width; ++c) {
        const double v = potential[ch * framed_pixels + (r + 1) * fw + (c + 1)];
        out[ch * pixels + r * geo.width + c] = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        const double b = base[ch * pixels + r * geo.width + c];
        base_lo = std::min(base_lo, b);
        base_hi = std::max(base_hi, b);
      }
    }
    const double span = hi - lo;
    const double gain = span > 1e-12 ? (base_hi - base_lo) / span : 1.0;
    for (std::size_t p = 0; p < pixels; ++p) {
      auto& v = out[ch * pixels + p];
      v = base_lo + (v - lo) * gain;
    }
  }
  return Field::FromValues(out_geometry, std::move(out));
}

Field GradientDomainClone(const Field& base, const Field& patch, const Field& mask, PixelOffset offset) {
  return GradientDomainClone(base, patch, mask, offset, DefaultKernelCache());
}

Field NaivePaste(const Field& base, const Field& patch, const Field& mask, PixelOffset offset) {
  const CloneGeometry geo = Validate(base, patch, mask, offset);
  const std::size_t pixels = geo.height * geo.width;
  const std::size_t patch_pixels = geo.patch_height * geo.patch_width;
  std::vector<double> out(base.values().begin(), base.values().end());
  for (std::size_t ch = 0; ch < geo.channels; ++ch) {
    for (std::size_t pr = 0; pr < geo.patch_height; ++pr) {
      for (std::size_t pc = 0; pc < geo.patch_width; ++pc) {
        if (mask[pr * geo.patch_width + pc] <= kMaskThreshold) continue;
        out[ch * pixels + (pr + offset.y) * geo.width + (pc + offset.x)] =
            patch[ch * patch_pixels + pr * geo.patch_width + pc];
      }
    }
  }
  return Field::FromValues(base.geometry(), std::move(out));
}

double SeamGradientMetric(const Field& image, const Field& mask, PixelOffset offset) {
  if (image.rank() != 2 || mask.rank() != 2 || mask.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "seam metric needs a 2D image and a grayscale mask");
  }
  const std::size_t h = image.shape()[0], w = image.shape()[1];
  if (offset.y + mask.shape()[0] > h || offset.x + mask.shape()[1] > w) {
    throw Error(ErrorCode::kInvalidArgument, "mask does not fit inside the image");
  }
  const CloneGeometry geo{h, w, mask.shape()[0], mask.shape()[1], image.channels(), offset, &mask};
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t ch = 0; ch < image.channels(); ++ch) {
    const auto plane = image.plane(0, ch);
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        const bool here = geo.Masked(r, c);
        if (r + 1 < h && here != geo.Masked(r + 1, c)) {
          total += std::abs(plane[(r + 1) * w + c] - plane[r * w + c]);
          ++count;
        }
        if (c + 1 < w && here != geo.Masked(r, c + 1)) {
          total += std::abs(plane[r * w + c + 1] - plane[r * w + c]);
          ++count;
        }
      }
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

}  // namespace gfc
