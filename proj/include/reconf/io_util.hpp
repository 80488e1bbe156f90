#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "reconf/errors.hpp"

namespace reconf::detail {

struct Line {
    std::string_view text;
    int number = 0;  // 1-based position in the original text
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Splits text into trimmed lines, dropping blanks and `c ...` comments.
inline std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = text.find('\n', pos);
        std::string_view raw = (end == std::string_view::npos) ? text.substr(pos) : text.substr(pos, end - pos);
        ++number;
        std::string_view line = trim(raw);
        const bool comment = !line.empty() && line[0] == 'c' && (line.size() == 1 || line[1] == ' ' || line[1] == '\t');
        if (!line.empty() && !comment) out.push_back({line, number});
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline long long parse_int(std::string_view tok, int line_number, const char* what) {
    long long value = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("line " + std::to_string(line_number) + ": expected an integer for " + what + ", got '" +
                         std::string(tok) + "'");
    }
    return value;
}

}  // namespace reconf::detail
