#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace trapspec {

/// Fixed 17-significant-digit formatting for every exported real.
std::string format_real(double value);

/// Write to `path` through a sibling temporary file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace trapspec
