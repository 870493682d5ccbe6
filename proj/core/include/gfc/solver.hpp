#ifndef GFC_SOLVER_HPP
#define GFC_SOLVER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gfc/field.hpp"
#include "gfc/spectral_kernel.hpp"

namespace gfc {

// How the free additive constant of the potential is fixed.
enum class ConstantPolicy {
  // Subtract the value at the padded-grid origin, before cropping.
  kCornerZero,
  // Subtract the mean of the cropped potential.
  kMeanZero,
};

struct SolverConfig {
  std::size_t pad = kDefaultPad;
  ConstantPolicy constant_policy = ConstantPolicy::kCornerZero;
};

// Solves stencil(I) = L for every (batch, channel) plane of `laplacian`:
// zero-pad by cfg.pad, multiply by the Green's function spectrum, inverse
// transform, keep the real part, fix the constant and crop. The output has
// the geometry of the input.
Field SolveLaplacian(const Field& laplacian, const SolverConfig& cfg, KernelCache& cache);
Field SolveLaplacian(const Field& laplacian, const SolverConfig& cfg = {});

// Exact transpose of SolveLaplacian as a linear map on each plane.
Field SolveLaplacianAdjoint(const Field& grad_output, const SolverConfig& cfg, KernelCache& cache);
Field SolveLaplacianAdjoint(const Field& grad_output, const SolverConfig& cfg = {});

// Zero-extended 5-point (2D) or 7-point (3D) Laplacian with -4 (-6) centre.
Field LaplacianStencil(const Field& f);

// Convolution of a full periodic grid with the Green's function, with no
// padding, constant fixing or cropping. `padded` must match
// kernel.padded_shape(). Returns the real part.
std::vector<double> PeriodicGreenSolve(std::span<const double> padded, const SpectralKernel& kernel);

}  // namespace gfc

#endif  // GFC_SOLVER_HPP
