#pragma once

// Minimal reader for the fixed CSV dialect used by the ingest module.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/error.hpp"

namespace loadcast::csv {

inline std::vector<std::string> split_row(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

inline double parse_double(const std::string& text, std::size_t line, const std::string& what) {
    const std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw DataError("line " + std::to_string(line) + ": malformed " + what + " '" + t + "'", line);
    }
    return v;
}

inline int parse_int(const std::string& text, std::size_t line, const std::string& what) {
    const std::string t = trim(text);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw DataError("line " + std::to_string(line) + ": malformed " + what + " '" + t + "'", line);
    }
    return v;
}

/// Shortest round-trip representation.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Reads header + data rows; checks the header matches `expected`.
struct Table {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  // file line of each row
};

inline Table read(const std::filesystem::path& path, const std::vector<std::string>& expected) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file", 1);
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
    auto header = split_row(line);
    for (auto& h : header) h = trim(h);
    if (header != expected) {
        std::string want;
        for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
        throw DataError(path.string() + ": expected header '" + want + "'", 1);
    }
    Table t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_row(line);
        if (fields.size() != expected.size()) {
            throw DataError(path.string() + ": line " + std::to_string(lineno) + ": expected " +
                                std::to_string(expected.size()) + " fields, got " +
                                std::to_string(fields.size()),
                            lineno);
        }
        t.rows.push_back(std::move(fields));
        t.lines.push_back(lineno);
    }
    return t;
}

}  // namespace loadcast::csv
