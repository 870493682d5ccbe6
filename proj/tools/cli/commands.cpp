#include "cli/commands.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gfc/clone.hpp"
#include "gfc/diff_ops.hpp"
#include "gfc/error.hpp"
#include "gfc/layers.hpp"
#include "gfc/solver.hpp"
#include "gfc/tensor_io.hpp"

namespace gfc::cli {
namespace {

constexpr double kRoundtripTolerance = 1e-6;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kFileNotFound:
    case ErrorCode::kBadMagic:
    case ErrorCode::kUnknownDtype:
    case ErrorCode::kTruncatedPayload:
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kLayout:
      return kExitIo;
    default:
      return kExitPrecondition;
  }
}

ConstantPolicy ParsePolicy(const std::string& name) {
  return name == "mean" ? ConstantPolicy::kMeanZero : ConstantPolicy::kCornerZero;
}

// Copies a single 2D image into a frame one pixel larger on every side.
Field FrameWithZeroRing(const Field& image) {
  const std::size_t h = image.shape()[0], w = image.shape()[1];
  Geometry g = image.geometry();
  g.shape = Shape({h + 2, w + 2});
  g.precision = Precision::kDouble;
  std::vector<double> framed(g.element_count(), 0.0);
  for (std::size_t p = 0; p < image.batch() * image.channels(); ++p) {
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        framed[p * g.plane_size() + (r + 1) * (w + 2) + c + 1] = image[p * h * w + r * w + c];
      }
    }
  }
  return Field::FromValues(g, std::move(framed));
}

// Largest interior curl magnitude over all component groups of a field whose
// channels are consecutive (u, v[, w]) groups.
double MaxGroupCurl(const Field& field) {
  const std::size_t rank = field.rank();
  double worst = 0.0;
  Geometry g = field.geometry();
  g.batch = 1;
  g.channels = 1;
  for (std::size_t b = 0; b < field.batch(); ++b) {
    for (std::size_t group = 0; group < field.channels() / rank; ++group) {
      std::vector<Field> components;
      for (std::size_t axis = 0; axis < rank; ++axis) {
        const auto plane = field.plane(b, group * rank + axis);
        components.push_back(Field::FromValues(g, std::vector<double>(plane.begin(), plane.end())));
      }
      const VectorField v(std::move(components));
      if (rank == 2) {
        worst = std::max(worst, MaxInteriorAbs(Curl2D(v)));
      } else {
        const VectorField curl = Curl3D(v);
        for (const auto& c : curl.components()) worst = std::max(worst, MaxInteriorAbs(c));
      }
    }
  }
  return worst;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIo, "cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

std::vector<std::size_t> ParseSizeList(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    sizes.push_back(static_cast<std::size_t>(value));
  }
  return sizes;
}

struct Options {
  std::string input, output, image, field, base, patch, mask, offset, sizes, csv;
  std::string constant = "corner";
  std::size_t pad = kDefaultPad;
  std::size_t repeats = 5;
  bool report = false;
  bool report_curl = false;
};

int CmdSolve(const Options& o, std::ostream& out) {
  const Field laplacian = ReadGft(o.input);
  const Field potential = SolveLaplacian(laplacian, SolverConfig{o.pad, ParsePolicy(o.constant)});
  WriteGft(potential, o.output);
  out << "solved " << laplacian.batch() * laplacian.channels() << " plane(s) -> " << o.output << '\n';
  return kExitOk;
}

int CmdRoundtrip(const Options& o, std::ostream& out) {
  const Field image = ReadPnm(o.image);
  const Field framed = FrameWithZeroRing(image);
  const Field recovered = SolveLaplacian(LaplacianStencil(framed), SolverConfig{kDefaultPad, ConstantPolicy::kCornerZero});

  const std::size_t h = image.shape()[0], w = image.shape()[1];
  double max_error = 0.0, sum_sq = 0.0;
  std::vector<double> channel_max(image.channels(), 0.0);
  for (std::size_t c = 0; c < image.channels(); ++c) {
    const auto original = image.plane(0, c);
    const auto solved = recovered.plane(0, c);
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t col = 0; col < w; ++col) {
        const double e = std::abs(solved[(r + 1) * (w + 2) + col + 1] - original[r * w + col]);
        channel_max[c] = std::max(channel_max[c], e);
        sum_sq += e * e;
      }
    }
    max_error = std::max(max_error, channel_max[c]);
  }
  const double rms = std::sqrt(sum_sq / static_cast<double>(image.size()));
  out << std::scientific << std::setprecision(3) << "max_abs_error=" << max_error << " rms_error=" << rms << '\n';
  if (o.report) {
    out << "image " << w << "x" << h << ", " << image.channels() << " channel(s), tolerance "
        << kRoundtripTolerance << '\n';
    for (std::size_t c = 0; c < channel_max.size(); ++c) {
      out << "channel " << c << " max_abs_error=" << channel_max[c] << '\n';
    }
  }
  return max_error <= kRoundtripTolerance ? kExitOk : kExitPrecondition;
}

int CmdProject(const Options& o, std::ostream& out) {
  const Field field = ReadGft(o.field);
  LayerSpec spec;
  spec.kind = LayerKind::kGid;
  spec.solver = SolverConfig{o.pad, ParsePolicy(o.constant)};
  const Field projected = GidForward(field, spec);
  if (o.report_curl) {
    out << std::scientific << std::setprecision(3) << "curl_before=" << MaxGroupCurl(field)
        << " curl_after=" << MaxGroupCurl(projected) << '\n';
  }
  WriteGft(projected, o.output);
  return kExitOk;
}

int CmdClone(const Options& o, std::ostream& out) {
  PixelOffset offset;
  {
    const auto comma = o.offset.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--offset", "expected X,Y");
    try {
      offset.x = std::stoul(o.offset.substr(0, comma));
      offset.y = std::stoul(o.offset.substr(comma + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--offset", "expected X,Y");
    }
  }
  const Field base = ReadPnm(o.base);
  const Field patch = ReadPnm(o.patch);
  const Field mask = ReadPnm(o.mask);
  const Field cloned = GradientDomainClone(base, patch, mask, offset);
  WritePnm(cloned, o.output);
  out << std::fixed << std::setprecision(4) << "seam_metric=" << SeamGradientMetric(cloned, mask, offset) * 255.0
      << " naive_seam_metric=" << SeamGradientMetric(NaivePaste(base, patch, mask, offset), mask, offset) * 255.0
      << '\n';
  return kExitOk;
}

int CmdBench(const Options& o, std::ostream& out) {
  std::vector<std::size_t> sizes;
  try {
    sizes = ParseSizeList(o.sizes);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--sizes", "expected a comma-separated list of integers");
  }
  if (sizes.empty()) throw CLI::ValidationError("--sizes", "at least one size is required");
  for (std::size_t s : sizes) {
    if (s < 8) throw CLI::ValidationError("--sizes", "every size must be >= 8");
  }
  if (o.repeats < 3) throw CLI::ValidationError("--repeats", "must be >= 3");
  const auto records = RunBench(sizes, o.repeats, o.pad);
  const std::string csv = BenchCsv(records);
  WriteTextFile(o.csv, csv);
  out << csv;
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green's function convolution: Laplacian solving, gradient integration and conservative projection", "gfc"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> policies{"corner", "mean"};

  auto* solve = app.add_subcommand("solve", "Solve a Laplacian stored in a GFT file");
  solve->add_option("--input", o.input, "Laplacian (GFT)")->required();
  solve->add_option("--output", o.output, "Potential (GFT)")->required();
  solve->add_option("--pad", o.pad, "Zero padding per side")->check(CLI::PositiveNumber);
  solve->add_option("--constant", o.constant, "Integration constant policy")->check(CLI::IsMember(policies));

  auto* roundtrip = app.add_subcommand("roundtrip", "Check that solving the stencil of an image recovers it");
  roundtrip->add_option("--image", o.image, "P5/P6 image")->required();
  roundtrip->add_flag("--report", o.report, "Print per-channel details");

  auto* project = app.add_subcommand("project", "Project a vector field onto conservative fields (GID)");
  project->add_option("--field", o.field, "Vector field (GFT), channels grouped per spatial axis")->required();
  project->add_option("--output", o.output, "Projected field (GFT)")->required();
  project->add_flag("--report-curl", o.report_curl, "Print max interior curl before and after");
  project->add_option("--pad", o.pad, "Zero padding per side")->check(CLI::PositiveNumber);
  project->add_option("--constant", o.constant, "Integration constant policy")->check(CLI::IsMember(policies));

  auto* clone = app.add_subcommand("clone", "Gradient-domain seamless cloning");
  clone->add_option("--base", o.base, "Base image (P5/P6)")->required();
  clone->add_option("--patch", o.patch, "Patch image (P5/P6)")->required();
  clone->add_option("--mask", o.mask, "Mask (P5), same size as the patch")->required();
  clone->add_option("--offset", o.offset, "Patch position X,Y in the base")->required();
  clone->add_option("--output", o.output, "Result image")->required();

  auto* bench = app.add_subcommand("bench", "Time the solver over grid sizes");
  bench->add_option("--sizes", o.sizes, "Comma-separated side lengths")->required();
  bench->add_option("--repeats", o.repeats, "Timed repeats per size (>= 3)");
  bench->add_option("--csv", o.csv, "CSV output path")->required();
  bench->add_option("--pad", o.pad, "Zero padding per side")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage{"gfc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (solve->parsed()) return CmdSolve(o, out);
    if (roundtrip->parsed()) return CmdRoundtrip(o, out);
    if (project->parsed()) return CmdProject(o, out);
    if (clone->parsed()) return CmdClone(o, out);
    if (bench->parsed()) return CmdBench(o, out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace gfc::cli
