#ifndef GFC_SRC_PLANE_SOLVER_HPP
#define GFC_SRC_PLANE_SOLVER_HPP

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "gfc/solver.hpp"

namespace gfc::detail {

// Applies the Green's-function solve (or its transpose) to one spatial plane
// at a time, reusing scratch buffers. Not thread-safe; one per thread.
class PlaneSolver {
 public:
  PlaneSolver(const Shape& image_shape, const SolverConfig& cfg, Precision precision,
              KernelCache& cache);

  void Solve(std::span<const double> laplacian, std::span<double> potential);
  void SolveAdjoint(std::span<const double> grad_output, std::span<double> grad_input);

 private:
  void Embed(std::span<const double> image);
  void Extract(std::span<double> image) const;
  // buffer <- real(ifft(fft(buffer) * spectrum)), spectrum conjugated if asked.
  void Convolve(bool conjugate);

  Shape image_shape_;
  SolverConfig cfg_;
  std::shared_ptr<const SpectralKernel> kernel_;
  std::vector<std::complex<double>> buffer_;
  std::vector<std::complex<double>> scratch_;
  std::vector<double> real_;
  std::vector<std::size_t> embed_;
  double input_norm_ = 0.0;
};

}  // namespace gfc::detail

#endif  // GFC_SRC_PLANE_SOLVER_HPP
