#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace backline {

// Shortest decimal representation that round-trips through strtod.
std::string format_double(double v);

// Whole file as a string. Throws MissingInputError when unreadable.
std::string read_file(const std::string& path);

void write_file(const std::string& path, const std::string& content);

std::vector<std::string> split_lines(const std::string& text);

// One CSV row; fields are joined with ',' and must not contain commas
// or newlines (all emitted fields here are identifiers or numbers).
std::string csv_row(const std::vector<std::string>& fields);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

// FNV-1a 64-bit digest, hex-encoded; used for provenance stamps.
std::string fnv1a_hex(const std::string& data);

}  // namespace backline
