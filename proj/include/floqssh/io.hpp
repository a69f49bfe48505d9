// io.hpp -- deterministic table serialization. Every output starts with a
// '#'-prefixed metadata block (tool version, then a full echo of the run
// configuration), followed by a header row and data rows. Doubles are
// printed as the shortest decimal string that round-trips, so identical
// runs produce byte-identical files.
#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace floqssh::io {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { csv, json };

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double x);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;  // echoed as '# key = value'
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;  // each row matches columns in length
};

void write_csv(const Table& table, std::ostream& os);

// Same content with columns mirrored as arrays under a "columns" object.
void write_json(const Table& table, std::ostream& os);

// Serialize to path in the requested format. Throws IoError on any failure
// to open or write.
void write_table(const Table& table, const std::string& path, Format format);

// Write pre-rendered text (e.g. a JSON report) to path; IoError on failure.
void write_text(const std::string& text, const std::string& path);

}  // namespace floqssh::io
