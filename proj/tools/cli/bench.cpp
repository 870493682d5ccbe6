#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "gfc/error.hpp"
#include "gfc/solver.hpp"

namespace gfc::cli {

std::vector<BenchRecord> RunBench(std::span<const std::size_t> sizes, std::size_t repeats, std::size_t pad) {
  if (repeats < 3) throw Error(ErrorCode::kInvalidArgument, "repeats must be >= 3");
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  std::vector<BenchRecord> records;
  for (std::size_t size : sizes) {
    if (size < 8) throw Error(ErrorCode::kInvalidArgument, "bench sizes must be >= 8");
    Geometry g;
    g.shape = Shape({size, size});
    std::vector<double> values(g.element_count());
    for (auto& v : values) v = normal(rng);
    const Field laplacian = Field::FromValues(g, std::move(values));

    KernelCache cache;
    const SolverConfig cfg{pad, ConstantPolicy::kCornerZero};
    (void)SolveLaplacian(laplacian, cfg, cache);  // builds the kernel and FFT plans

    std::vector<double> seconds;
    for (std::size_t r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const Field potential = SolveLaplacian(laplacian, cfg, cache);
      const auto stop = std::chrono::steady_clock::now();
      seconds.push_back(std::chrono::duration<double>(stop - start).count());
      if (potential.size() != laplacian.size()) throw Error(ErrorCode::kNumerical, "unexpected output size");
    }
    std::sort(seconds.begin(), seconds.end());
    const std::size_t mid = seconds.size() / 2;
    const double median = seconds.size() % 2 ? seconds[mid] : 0.5 * (seconds[mid - 1] + seconds[mid]);
    records.push_back(BenchRecord{size, size * size, std::max(median, 1e-9), repeats});
  }
  return records;
}

std::string BenchCsv(std::span<const BenchRecord> records) {
  std::ostringstream csv;
  csv << "size,n,median_seconds\n";
  csv.precision(9);
  for (const auto& r : records) csv << r.size << ',' << r.n << ',' << r.median_seconds << '\n';
  return csv.str();
}

}  // namespace gfc::cli
