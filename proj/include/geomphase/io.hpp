#pragma once
// Serialization helpers shared by the command-line tool: round-trippable CSV
// (17 significant digits, '.' decimal point, '\n' line ends) and ordered JSON.

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace geomphase {

using ojson = nlohmann::ordered_json;

// Shortest-faithful decimal form: 17 significant digits round-trip a double.
inline std::string format_double(double x) {
    if (!std::isfinite(x)) throw InternalError("io: refusing to serialize a non-finite value");
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw InternalError("io: float formatting failed");
    return std::string(buf, res.ptr);
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> trailing_comments;  // emitted as '#'-prefixed lines
};

inline std::string emit_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size())
            throw InternalError("io: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    for (const auto& c : t.trailing_comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    return out;
}

namespace detail {

inline void check_finite(const ojson& j) {
    if (j.is_number_float() && !std::isfinite(j.get<double>()))
        throw InternalError("io: refusing to serialize a non-finite value");
    if (j.is_object() || j.is_array())
        for (const auto& v : j) check_finite(v);
}

}  // namespace detail

inline std::string emit_json(const ojson& j) {
    detail::check_finite(j);
    return j.dump(2) + "\n";
}

struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Reads CSV produced by emit_csv. Skips '#' comment lines, tolerates
// trailing '\r'.
inline ParsedCsv parse_csv(const std::string& text) {
    ParsedCsv out;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!have_header) {
            out.header = cells;
            have_header = true;
            continue;
        }
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const char* b = cells[i].data();
            const char* e = b + cells[i].size();
            const auto res = std::from_chars(b, e, row[i]);
            if (res.ec != std::errc{} || res.ptr != e)
                throw InvalidConfig("io: malformed numeric cell: " + cells[i]);
        }
        out.rows.push_back(std::move(row));
    }
    if (!have_header) throw InvalidConfig("io: CSV input has no header row");
    return out;
}

}  // namespace geomphase
