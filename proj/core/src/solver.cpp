#include "gfc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <numeric>

#include "fft.hpp"
#include "gfc/error.hpp"
#include "plane_ops.hpp"
#include "plane_solver.hpp"

namespace gfc {
namespace detail {
namespace {

// Flat padded-grid index of every image element, in image order.
std::vector<std::size_t> EmbedIndices(const Shape& image, const Shape& padded, std::size_t pad) {
  std::vector<std::size_t> indices(image.size());
  const std::size_t rank = image.rank();
  std::vector<std::size_t> point(rank, 0);
  for (std::size_t flat = 0; flat < indices.size(); ++flat) {
    std::size_t target = 0;
    for (std::size_t axis = 0; axis < rank; ++axis) target += (point[axis] + pad) * padded.stride(axis);
    indices[flat] = target;
    for (std::size_t axis = rank; axis-- > 0;) {
      if (++point[axis] < image[axis]) break;
      point[axis] = 0;
    }
  }
  return indices;
}

// Relative size of the imaginary residue tolerated after the inverse transform.
constexpr double kImaginaryResidueTolerance = 1e-9;

}  // namespace

PlaneSolver::PlaneSolver(const Shape& image_shape, const SolverConfig& cfg, Precision precision,
                         KernelCache& cache)
    : image_shape_(image_shape), cfg_(cfg), kernel_(cache.GetOrBuild(image_shape, cfg.pad, precision)) {
  const std::size_t n = kernel_->padded_shape().size();
  buffer_.resize(n);
  scratch_.resize(n);
  real_.resize(n);
  embed_ = EmbedIndices(image_shape_, kernel_->padded_shape(), cfg_.pad);
}

void PlaneSolver::Embed(std::span<const double> image) {
  std::fill(buffer_.begin(), buffer_.end(), std::complex<double>{});
  input_norm_ = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    buffer_[embed_[i]] = image[i];
    input_norm_ += image[i] * image[i];
  }
  input_norm_ = std::sqrt(input_norm_);
}

void PlaneSolver::Convolve(bool conjugate) {
  const Shape& padded = kernel_->padded_shape();
  detail::Fft(padded, FftDirection::kForward, buffer_, scratch_);
  const auto spectrum = kernel_->spectrum();
  for (std::size_t k = 0; k < scratch_.size(); ++k) {
    scratch_[k] *= conjugate ? std::conj(spectrum[k]) : spectrum[k];
  }
  detail::Fft(padded, FftDirection::kInverse, scratch_, buffer_);

  const double scale = 1.0 / static_cast<double>(buffer_.size());
  double residue = 0.0;
  for (std::size_t k = 0; k < buffer_.size(); ++k) {
    real_[k] = buffer_[k].real() * scale;
    residue = std::max(residue, std::abs(buffer_[k].imag() * scale));
  }
  if (residue > kImaginaryResidueTolerance * input_norm_) {
    throw Error(ErrorCode::kNumerical, "imaginary residue " + std::to_string(residue) +
                                           " exceeds tolerance after inverse transform");
  }
}

void PlaneSolver::Extract(std::span<double> image) const {
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = real_[embed_[i]];
}

void PlaneSolver::Solve(std::span<const double> laplacian, std::span<double> potential) {
  Embed(laplacian);
  Convolve(false);
  Extract(potential);
  double offset = 0.0;
  if (cfg_.constant_policy == ConstantPolicy::kCornerZero) {
    offset = real_[0];
  } else {
    offset = std::accumulate(potential.begin(), potential.end(), 0.0) / static_cast<double>(potential.size());
  }
  for (auto& v : potential) v -= offset;
}

void PlaneSolver::SolveAdjoint(std::span<const double> grad_output, std::span<double> grad_input) {
  const double total = std::accumulate(grad_output.begin(), grad_output.end(), 0.0);
  if (cfg_.constant_policy == ConstantPolicy::kMeanZero) {
    // Centering is symmetric, so its transpose is itself.
    const double mean = total / static_cast<double>(grad_output.size());
    std::vector<double> centred(grad_output.begin(), grad_output.end());
    for (auto& v : centred) v -= mean;
    Embed(centred);
  } else {
    Embed(grad_output);
    // Transpose of "subtract the origin value from every cropped cell".
    buffer_[0] -= total;
  }
  Convolve(true);
  Extract(grad_input);
}

}  // namespace detail

namespace {

template <typename PlaneFn>
Field MapPlanes(const Field& in, PlaneFn&& fn) {
  std::vector<double> out(in.size());
  const std::size_t n = in.geometry().plane_size();
  for (std::size_t b = 0; b < in.batch(); ++b) {
    for (std::size_t c = 0; c < in.channels(); ++c) {
      fn(in.plane(b, c), std::span<double>(out).subspan((b * in.channels() + c) * n, n));
    }
  }
  return Field::FromValues(in.geometry(), std::move(out));
}

}  // namespace

Field SolveLaplacian(const Field& laplacian, const SolverConfig& cfg, KernelCache& cache) {
  detail::PlaneSolver solver(laplacian.shape(), cfg, laplacian.precision(), cache);
  return MapPlanes(laplacian, [&](auto in, auto out) { solver.Solve(in, out); });
}

Field SolveLaplacian(const Field& laplacian, const SolverConfig& cfg) {
  return SolveLaplacian(laplacian, cfg, DefaultKernelCache());
}

Field SolveLaplacianAdjoint(const Field& grad_output, const SolverConfig& cfg, KernelCache& cache) {
  detail::PlaneSolver solver(grad_output.shape(), cfg, grad_output.precision(), cache);
  return MapPlanes(grad_output, [&](auto in, auto out) { solver.SolveAdjoint(in, out); });
}

Field SolveLaplacianAdjoint(const Field& grad_output, const SolverConfig& cfg) {
  return SolveLaplacianAdjoint(grad_output, cfg, DefaultKernelCache());
}

Field LaplacianStencil(const Field& f) {
  return MapPlanes(f, [&](auto in, auto out) { detail::Stencil(in, f.shape(), out); });
}

std::vector<double> PeriodicGreenSolve(std::span<const double> padded, const SpectralKernel& kernel) {
  const Shape& shape = kernel.padded_shape();
  if (padded.size() != shape.size()) {
    throw Error(ErrorCode::kShapeMismatch, "periodic solve input does not match the kernel grid");
  }
  std::vector<std::complex<double>> buffer(padded.begin(), padded.end());
  std::vector<std::complex<double>> spectrum(shape.size());
  detail::Fft(shape, detail::FftDirection::kForward, buffer, spectrum);
  const auto green = kernel.spectrum();
  for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= green[k];
  detail::Fft(shape, detail::FftDirection::kInverse, spectrum, buffer);
  std::vector<double> out(shape.size());
  const double scale = 1.0 / static_cast<double>(shape.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = buffer[k].real() * scale;
  return out;
}

}  // namespace gfc
