#ifndef GFC_TOOLS_CLI_COMMANDS_HPP
#define GFC_TOOLS_CLI_COMMANDS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gfc/spectral_kernel.hpp"

namespace gfc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitPrecondition = 3,
};

// Runs one `gfc` invocation; `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRecord {
  std::size_t size = 0;
  std::size_t n = 0;
  double median_seconds = 0.0;
  std::size_t repeats = 0;
};

// Median wall time of SolveLaplacian on size x size inputs, kernel cache warm.
std::vector<BenchRecord> RunBench(std::span<const std::size_t> sizes, std::size_t repeats,
                                  std::size_t pad = kDefaultPad);

std::string BenchCsv(std::span<const BenchRecord> records);

}  // namespace gfc::cli

#endif  // GFC_TOOLS_CLI_COMMANDS_HPP
