#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace discord_dyn {

// Round-trip-exact decimal rendering of a double (17 significant digits).
std::string format_double(double v);

struct CsvColumn {
  std::string name;
  const std::vector<double>* values;
};

// Writes header + rows with LF endings via write-then-rename, and returns the
// FNV-1a 64 checksum of each column's formatted cells.
std::vector<uint64_t> write_csv_atomic(const std::filesystem::path& path,
                                       const std::vector<CsvColumn>& columns);

uint64_t fnv1a64(const std::string& bytes);
std::string to_hex(uint64_t v);

// Serializes and renames into place; the manifest lands only after the data
// files it describes are complete.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace discord_dyn
