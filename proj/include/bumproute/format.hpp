#pragma once

// Number formatting and file output shared by the exporters.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>

#include "bumproute/errors.hpp"

namespace bumproute::format {

/// 17 significant digits; parses back to the identical double.
inline std::string real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest round-trip form ("0.1" rather than "0.10000000000000001"); used in file names.
inline std::string short_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir.string(), "cannot create directory: " + ec.message());
  if (!std::filesystem::is_directory(dir)) throw IoError(dir.string(), "not a directory");
}

/// Writes `content` to `path` in one ordered write (binary mode: LF line endings).
inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  os.flush();
  if (!os) throw IoError(path.string(), "write failed");
}

}  // namespace bumproute::format
