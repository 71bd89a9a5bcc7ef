#pragma once

// Minimal CSV support for the formats this project owns: comma-separated,
// no quoting, decimal points, '#' comments and blank lines skipped.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eegclass/types.hpp"

namespace eegclass::detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        rows.push_back(split_csv_line(stripped));
    }
    return rows;
}

inline double parse_double(const std::string& text, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + text + "' (" + context + ")");
    }
}

}  // namespace eegclass::detail
