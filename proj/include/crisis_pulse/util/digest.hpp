#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace crisis_pulse {

std::string sha256_hex(std::string_view bytes);

// Whole-file helpers; both throw IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace crisis_pulse
