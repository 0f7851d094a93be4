#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace adamlab {

/// Shortest decimal that round-trips to the same binary64 value.
std::string format_double(double value);

inline std::string format_bool(bool value) { return value ? "1" : "0"; }

std::string format_optional(const std::optional<std::int64_t>& value);
std::string format_optional(const std::optional<double>& value);

/// Writes content to path via a temporary file in the same directory plus
/// rename, so readers never observe a partial file. Throws IoError.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace adamlab
