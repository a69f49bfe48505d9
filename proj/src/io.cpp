#include "floqssh/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "floqssh/version.hpp"

namespace floqssh::io {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc()) throw IoError("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_to_string(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

void require_rectangular(const Table& table) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("table row length does not match column count");
        }
    }
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
    require_rectangular(table);
    os << "# " << kToolName << ' ' << kVersion << '\n';
    for (const auto& [key, value] : table.metadata) os << "# " << key << " = " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << cell_to_string(row[c]);
        }
        os << '\n';
    }
}

void write_json(const Table& table, std::ostream& os) {
    require_rectangular(table);
    nlohmann::ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            const Cell& cell = row[c];
            if (const auto* i = std::get_if<std::int64_t>(&cell)) {
                arr.push_back(*i);
            } else if (const auto* d = std::get_if<double>(&cell)) {
                arr.push_back(*d);
            } else {
                arr.push_back(std::get<std::string>(cell));
            }
        }
        cols[table.columns[c]] = std::move(arr);
    }
    doc["columns"] = std::move(cols);
    os << doc.dump(2) << '\n';
}

void write_table(const Table& table, const std::string& path, Format format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open output file: " + path);
    if (format == Format::csv) {
        write_csv(table, os);
    } else {
        write_json(table, os);
    }
    os.flush();
    if (!os) throw IoError("write failed: " + path);
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open output file: " + path);
    os << text;
    os.flush();
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace floqssh::io
