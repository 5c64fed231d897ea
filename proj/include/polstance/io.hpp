#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace polstance {

/// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, hex encoded. Used for config digests, not security.
std::string fnv1a_hex(std::string_view data);

}  // namespace polstance
