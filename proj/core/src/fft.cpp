#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "gfc/error.hpp"

namespace gfc::detail {
namespace {

// The FFTW planner is not re-entrant; executing an existing plan is.
class PlanRegistry {
 public:
  ~PlanRegistry() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan Get(const Shape& shape, FftDirection direction) {
    std::vector<int> dims(shape.dims().begin(), shape.dims().end());
    Key key{dims, direction};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t n = shape.size();
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    const int sign = direction == FftDirection::kForward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in, out, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw Error(ErrorCode::kNumerical, "FFTW failed to create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  using Key = std::pair<std::vector<int>, FftDirection>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanRegistry& Registry() {
  static PlanRegistry registry;
  return registry;
}

}  // namespace

void Fft(const Shape& shape, FftDirection direction, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out) {
  if (in.size() != shape.size() || out.size() != shape.size()) {
    throw Error(ErrorCode::kShapeMismatch, "FFT buffer size does not match shape");
  }
  fftw_plan plan = Registry().Get(shape, direction);
  // Out-of-place c2c plans never write to the input array.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace gfc::detail
