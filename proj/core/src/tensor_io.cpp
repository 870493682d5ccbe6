#include "gfc/tensor_io.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "gfc/error.hpp"

namespace gfc {
namespace {

constexpr std::array<char, 4> kMagic = {'G', 'F', 'T', '1'};

void PutU64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t GetU64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::vector<unsigned char> ReadAll(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path.string());
  return bytes;
}

// Writes next to the destination and renames, so a failed write never leaves
// a partial file behind.
void WriteAll(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIo, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::kIo, "cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

template <typename T>
void PutLittleEndian(std::vector<unsigned char>& out, T value) {
  using Bits = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const auto bits = std::bit_cast<Bits>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

template <typename T>
T GetLittleEndian(const unsigned char* p) {
  using Bits = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  Bits bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<Bits>(p[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void WriteGft(const Field& field, const std::filesystem::path& path) {
  const std::size_t leading = field.batch() * field.channels();
  std::vector<std::uint64_t> dims;
  if (field.rank() == 3 || leading > 1) dims.push_back(leading);
  for (std::size_t d : field.shape().dims()) dims.push_back(d);

  const bool single = field.precision() == Precision::kSingle;
  std::vector<unsigned char> bytes(kMagic.begin(), kMagic.end());
  bytes.push_back(single ? 1 : 0);
  bytes.push_back(static_cast<unsigned char>(dims.size()));
  for (auto d : dims) PutU64(bytes, d);
  bytes.reserve(bytes.size() + field.size() * (single ? 4 : 8));
  for (double v : field.values()) {
    if (single) {
      PutLittleEndian(bytes, static_cast<float>(v));
    } else {
      PutLittleEndian(bytes, v);
    }
  }
  WriteAll(path, bytes);
}

Field ReadGft(const std::filesystem::path& path) {
  const auto bytes = ReadAll(path);
  if (bytes.size() < 6 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, path.string() + " is not a GFT1 file");
  }
  const unsigned dtype = bytes[4];
  if (dtype > 1) throw Error(ErrorCode::kUnknownDtype, "dtype byte " + std::to_string(dtype));
  const std::size_t ndim = bytes[5];
  if (ndim < 2 || ndim > 4) throw Error(ErrorCode::kMalformedHeader, "ndim " + std::to_string(ndim));
  const std::size_t header = 6 + 8 * ndim;
  if (bytes.size() < header) throw Error(ErrorCode::kTruncatedPayload, "header is cut short");

  std::vector<std::size_t> dims(ndim);
  std::size_t count = 1;
  for (std::size_t i = 0; i < ndim; ++i) {
    const std::uint64_t d = GetU64(bytes.data() + 6 + 8 * i);
    if (d == 0 || d > (std::uint64_t{1} << 40)) {
      throw Error(ErrorCode::kMalformedHeader, "extent " + std::to_string(d));
    }
    dims[i] = static_cast<std::size_t>(d);
    count *= dims[i];
  }
  const std::size_t width = dtype == 0 ? 8 : 4;
  const std::size_t payload = bytes.size() - header;
  if (payload < count * width) {
    throw Error(ErrorCode::kTruncatedPayload, "expected " + std::to_string(count * width) +
                                                  " payload bytes, found " + std::to_string(payload));
  }
  if (payload > count * width) {
    throw Error(ErrorCode::kMalformedHeader, std::to_string(payload - count * width) + " trailing bytes");
  }

  Geometry g;
  g.precision = dtype == 0 ? Precision::kDouble : Precision::kSingle;
  if (ndim == 2) {
    g.shape = Shape({dims[0], dims[1]});
  } else {
    g.channels = dims[0];
    g.shape = Shape(std::vector<std::size_t>(dims.begin() + 1, dims.end()));
  }
  std::vector<double> values(count);
  const unsigned char* p = bytes.data() + header;
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = dtype == 0 ? GetLittleEndian<double>(p + 8 * i) : GetLittleEndian<float>(p + 4 * i);
  }
  return Field::FromValues(g, std::move(values));
}

namespace {

// Cursor over a PNM header: whitespace-separated decimal tokens, '#' comments.
class PnmHeaderParser {
 public:
  explicit PnmHeaderParser(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  std::size_t NextNumber() {
    SkipSpaceAndComments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (++digits > 9) throw Error(ErrorCode::kUnsupportedFormat, "header number too large");
    }
    if (digits == 0) throw Error(ErrorCode::kUnsupportedFormat, "malformed PNM header");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t RasterOffset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kUnsupportedFormat, "malformed PNM header");
    }
    return pos_ + 1;
  }

  void Skip(std::size_t n) { pos_ += n; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Field ReadPnm(const std::filesystem::path& path) {
  const auto bytes = ReadAll(path);
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::kUnsupportedFormat, path.string() + " is not a PNM file");
  }
  std::size_t channels = 0;
  if (bytes[1] == '5') {
    channels = 1;
  } else if (bytes[1] == '6') {
    channels = 3;
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::string("P") + static_cast<char>(bytes[1]) + " images are not supported; use binary P5 or P6");
  }
  PnmHeaderParser parser(bytes);
  parser.Skip(2);
  const std::size_t width = parser.NextNumber();
  const std::size_t height = parser.NextNumber();
  const std::size_t maxval = parser.NextNumber();
  if (maxval != 255) throw Error(ErrorCode::kUnsupportedFormat, "only maxval 255 is supported");
  const std::size_t offset = parser.RasterOffset();
  const std::size_t pixels = width * height;
  if (bytes.size() < offset + pixels * channels) {
    throw Error(ErrorCode::kTruncatedPayload, "raster is shorter than " + std::to_string(width) + "x" +
                                                  std::to_string(height));
  }

  Geometry g;
  g.shape = Shape({height, width});
  g.channels = channels;
  std::vector<double> values(pixels * channels);
  for (std::size_t p = 0; p < pixels; ++p) {
    for (std::size_t c = 0; c < channels; ++c) {
      values[c * pixels + p] = bytes[offset + p * channels + c] / 255.0;
    }
  }
  return Field::FromValues(g, std::move(values));
}

void WritePnm(const Field& image, const std::filesystem::path& path) {
  if (image.rank() != 2 || image.batch() != 1 || (image.channels() != 1 && image.channels() != 3)) {
    throw Error(ErrorCode::kUnsupportedFormat, "PNM output needs a single 2D image with 1 or 3 channels");
  }
  const std::size_t height = image.shape()[0];
  const std::size_t width = image.shape()[1];
  const std::size_t channels = image.channels();
  const std::string header =
      std::string(channels == 1 ? "P5" : "P6") + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  const std::size_t pixels = width * height;
  for (std::size_t p = 0; p < pixels; ++p) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double scaled = std::round(image[c * pixels + p] * 255.0);
      bytes.push_back(static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0)));
    }
  }
  WriteAll(path, bytes);
}

}  // namespace gfc
