#include "qgtlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgtlab/errors.hpp"

namespace qgt {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double parse_double(const std::string& text) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw SchemaError("cannot parse '" + text + "' as a number");
    }
    if (consumed != text.size()) throw SchemaError("trailing garbage in number '" + text + "'");
    return value;
}

std::string join_csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) row += ',';
        row += fields[i];
    }
    row += '\n';
    return row;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

CsvTable CsvTable::read_file(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw Error("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(input, line)) throw SchemaError("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_csv_line(line);
    while (std::getline(input, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != table.header.size())
            throw SchemaError("row width mismatch in '" + path + "'");
        table.rows.push_back(std::move(fields));
    }
    return table;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw SchemaError("missing column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

void CsvTable::require_schema(const std::string& schema) const {
    const std::size_t idx = column("schema");
    for (const auto& row : rows)
        if (row[idx] != schema)
            throw SchemaError("expected schema '" + schema + "', found '" + row[idx] + "'");
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    std::ofstream output(path, std::ios::binary);
    if (!output) throw Error("cannot write '" + path + "'");
    output << join_csv_row(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw SchemaError("row width mismatch on write");
        output << join_csv_row(row);
    }
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

}  // namespace qgt
