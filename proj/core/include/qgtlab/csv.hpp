#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgt {

inline constexpr const char* kSweepSchema = "qgt.sweep.v1";
inline constexpr const char* kBerrySchema = "qgt.berry.v1";
inline constexpr const char* kFitSchema = "qgt.fit.v1";

// 17 significant digits: enough to round-trip any double exactly.
std::string format_double(double value);

double parse_double(const std::string& text);

std::string join_csv_row(const std::vector<std::string>& fields);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read_file(const std::string& path);

    // Column index by name; throws SchemaError when missing.
    std::size_t column(const std::string& name) const;
    bool has_column(const std::string& name) const;

    // Requires a 'schema' column whose entries all equal `schema`.
    void require_schema(const std::string& schema) const;
};

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

std::string read_file_bytes(const std::string& path);

// FNV-1a 64-bit checksum of a byte string.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace qgt
