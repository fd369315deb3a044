#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rrm/point_cloud.hpp"

namespace rrm {

enum class CloudFormat { csv, pcf };

/// "csv" or "pcf"; anything else throws std::invalid_argument.
CloudFormat parse_cloud_format(std::string_view tag);
std::string_view to_string(CloudFormat format) noexcept;
/// From the file extension (.csv / .pcf).
CloudFormat format_from_path(const std::filesystem::path& path);

/// CSV: one point per line, comma-separated reals, optional leading "#" header
/// line, LF or CRLF. Errors carry the 1-based line number.
PointCloud parse_csv(std::string_view text);
std::string format_csv(const PointCloud& cloud);

/// PCF: "PCF1", u32 n, u32 d, then n*d f64, all little-endian. Errors carry
/// the byte offset.
PointCloud parse_pcf(std::string_view bytes);
std::string format_pcf(const PointCloud& cloud);

PointCloud load_point_cloud(const std::filesystem::path& path, CloudFormat format);
void save_point_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format);

}  // namespace rrm
