#include "discord_dyn/io.hpp"

#include <cstdio>
#include <fstream>

#include "discord_dyn/errors.hpp"

namespace discord_dyn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<uint64_t> write_csv_atomic(const std::filesystem::path& path,
                                       const std::vector<CsvColumn>& columns) {
  if (columns.empty()) throw ValidationError("write_csv_atomic: no columns");
  const size_t rows = columns.front().values->size();
  for (const auto& col : columns) {
    if (col.values->size() != rows) throw ValidationError("write_csv_atomic: ragged columns");
  }

  std::string body;
  std::vector<std::string> column_bytes(columns.size());
  for (size_t c = 0; c < columns.size(); ++c) {
    body += columns[c].name;
    body += (c + 1 < columns.size()) ? ',' : '\n';
  }
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      const std::string cell = format_double((*columns[c].values)[r]);
      body += cell;
      body += (c + 1 < columns.size()) ? ',' : '\n';
      column_bytes[c] += cell;
      column_bytes[c] += '\n';
    }
  }

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string());
    out << body;
    if (!out) throw std::ios_base::failure("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);

  std::vector<uint64_t> checksums(columns.size());
  for (size_t c = 0; c < columns.size(); ++c) checksums[c] = fnv1a64(column_bytes[c]);
  return checksums;
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string());
    out << j.dump(2) << "\n";
    if (!out) throw std::ios_base::failure("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace discord_dyn
