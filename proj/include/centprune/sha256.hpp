#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace centprune {

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(const std::string& bytes);

} // namespace centprune
