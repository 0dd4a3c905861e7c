#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "subsetcodec/density.hpp"
#include "subsetcodec/prefix_set.hpp"

namespace subsetcodec {

// SUBSET01 layout: 8 magic bytes "SUBSET01", horizon as 8-byte little-endian
// unsigned, then ceil(horizon/8) bytes with bit n at byte n/8, bit n%8 (LSB first).
std::vector<std::uint8_t> serialize_set(const FinitePrefixSet& a);
FinitePrefixSet deserialize_set(const std::vector<std::uint8_t>& bytes);

void write_set(const std::filesystem::path& path, const FinitePrefixSet& a);
FinitePrefixSet read_set(const std::filesystem::path& path);

// Header "n,count,density_num,density_den", one row per window point,
// density in lowest terms.
std::string profile_csv(const DensityProfile& profile);
void write_profile_csv(const std::filesystem::path& path, const DensityProfile& profile);

// Writes via a sibling temporary and rename so a failed run leaves no partial file.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace subsetcodec
