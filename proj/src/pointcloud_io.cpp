#include "rrm/pointcloud_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "rrm/error.hpp"

namespace rrm {
namespace {

constexpr std::string_view kPcfMagic = "PCF1";
constexpr std::size_t kPcfHeader = 12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

std::uint64_t get_le(std::string_view bytes, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + b])) << (8 * b);
  }
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

CloudFormat parse_cloud_format(std::string_view tag) {
  if (tag == "csv") return CloudFormat::csv;
  if (tag == "pcf") return CloudFormat::pcf;
  throw std::invalid_argument("unsupported point cloud format '" + std::string(tag) + "'");
}

std::string_view to_string(CloudFormat format) noexcept { return format == CloudFormat::csv ? "csv" : "pcf"; }

CloudFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext.empty()) throw std::invalid_argument("cannot infer format of " + path.string());
  return parse_cloud_format(std::string_view(ext).substr(1));
}

PointCloud parse_csv(std::string_view text) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no != 1) throw DataError("line " + std::to_string(line_no) + ": header allowed only on line 1");
      continue;
    }
    std::size_t cells = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      const std::string_view cell = trim(line.substr(0, comma));
      double v = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || end != cell.data() + cell.size()) {
        throw DataError("line " + std::to_string(line_no) + ", cell " + std::to_string(cells + 1) +
                        ": not a number '" + std::string(cell) + "'");
      }
      coords.push_back(v);
      ++cells;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (dim == 0) {
      dim = cells;
    } else if (cells != dim) {
      throw DataError("line " + std::to_string(line_no) + ": ragged row with " + std::to_string(cells) +
                      " cells, expected " + std::to_string(dim));
    }
  }
  if (coords.empty()) throw DataError("empty cloud");
  return PointCloud(dim, std::move(coords));
}

std::string format_csv(const PointCloud& cloud) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = 0; j < cloud.dim(); ++j) {
      if (j) out.push_back(',');
      const auto res = std::to_chars(buf, buf + sizeof buf, cloud(i, j), std::chars_format::general, 17);
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

PointCloud parse_pcf(std::string_view bytes) {
  if (bytes.size() < kPcfHeader) {
    throw DataError("offset " + std::to_string(bytes.size()) + ": truncated PCF header");
  }
  if (bytes.substr(0, 4) != kPcfMagic) throw DataError("offset 0: bad magic bytes, expected PCF1");
  const auto n = static_cast<std::size_t>(get_le(bytes, 4, 4));
  const auto d = static_cast<std::size_t>(get_le(bytes, 8, 4));
  if (n == 0) throw DataError("empty cloud");
  if (d == 0) throw DataError("offset 8: dimension must be at least 1");
  const std::size_t expected = kPcfHeader + n * d * 8;
  if (bytes.size() < expected) {
    throw DataError("offset " + std::to_string(bytes.size()) + ": truncated payload, expected " +
                    std::to_string(expected) + " bytes");
  }
  if (bytes.size() > expected) {
    throw DataError("offset " + std::to_string(expected) + ": trailing bytes after payload");
  }
  std::vector<double> coords(n * d);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    coords[k] = std::bit_cast<double>(get_le(bytes, kPcfHeader + 8 * k, 8));
  }
  return PointCloud(d, std::move(coords));
}

std::string format_pcf(const PointCloud& cloud) {
  std::string out(kPcfMagic);
  out.reserve(kPcfHeader + cloud.coords().size() * 8);
  put_u32(out, static_cast<std::uint32_t>(cloud.size()));
  put_u32(out, static_cast<std::uint32_t>(cloud.dim()));
  for (double v : cloud.coords()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

PointCloud load_point_cloud(const std::filesystem::path& path, CloudFormat format) {
  const std::string bytes = read_file(path);
  try {
    return format == CloudFormat::csv ? parse_csv(bytes) : parse_pcf(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_point_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format) {
  const std::string bytes = format == CloudFormat::csv ? format_csv(cloud) : format_pcf(cloud);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace rrm
