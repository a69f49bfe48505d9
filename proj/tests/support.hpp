// Test-side helpers: run a command, read files, and parse the tool's table
// output ('#'-prefixed metadata block, header row, comma-separated rows).
#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

inline int run_command(const std::string& command) {
    const int rc = std::system(command.c_str());
    if (rc == -1) throw std::runtime_error("system() failed for: " + command);
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return -1;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

// Fresh per-tag scratch directory under the system temp root.
inline std::string fresh_dir(const std::string& tag) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("floqssh_tests_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

struct ParsedTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    bool has_meta(const std::string& key) const {
        for (const auto& [k, v] : metadata)
            if (k == key) return true;
        return false;
    }
    const std::string& meta(const std::string& key) const {
        for (const auto& [k, v] : metadata)
            if (k == key) return v;
        throw std::runtime_error("metadata key not found: " + key);
    }
    int col(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        throw std::runtime_error("column not found: " + name);
    }
    double num(std::size_t row, int column) const {
        return std::stod(rows.at(row).at(static_cast<std::size_t>(column)));
    }
    const std::string& cell(std::size_t row, int column) const {
        return rows.at(row).at(static_cast<std::size_t>(column));
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline ParsedTable parse_table(const std::string& text) {
    ParsedTable table;
    std::stringstream ss(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            const auto sep = body.find(" = ");
            if (sep == std::string::npos) {
                table.metadata.emplace_back("", body);
            } else {
                table.metadata.emplace_back(body.substr(0, sep), body.substr(sep + 3));
            }
            continue;
        }
        if (!header_seen) {
            table.columns = split_csv_line(line);
            header_seen = true;
        } else {
            table.rows.push_back(split_csv_line(line));
        }
    }
    return table;
}

inline ParsedTable parse_table_file(const std::string& path) {
    return parse_table(read_file(path));
}

}  // namespace testsupport
