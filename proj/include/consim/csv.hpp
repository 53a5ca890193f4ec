#pragma once

// Small CSV helpers. Doubles are serialized with std::to_chars (shortest
// round-trip form) so written files are byte-stable and parse back
// field-exact.

#include <charconv>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "consim/errors.hpp"
#include "consim/graph.hpp"

namespace consim {

inline std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

inline double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_double: bad number '" + std::string(text) + "'");
    }
    return value;
}

inline std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_u64: bad integer '" + std::string(text) + "'");
    }
    return value;
}

inline bool parse_bool(std::string_view text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw std::invalid_argument("parse_bool: expected true/false, got '" + std::string(text) + "'");
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cells;
}

/// Canonical edge-list dump: header `src,dst`, one edge per line with
/// src < dst, sorted lexicographically (the Network already stores edges
/// that way).
inline void write_edge_csv(std::ostream& out, const Network& g) {
    out << "src,dst\n";
    for (const auto& [a, b] : g.edges) {
        out << a << ',' << b << '\n';
    }
}

/// Trajectory dump: header `step,collective_thought`, row k holds the
/// value after k steps (row 0 is the initial state).
inline void write_trajectory_csv(std::ostream& out, const std::vector<double>& trajectory) {
    out << "step,collective_thought\n";
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        out << k << ',' << format_double(trajectory[k]) << '\n';
    }
}

}  // namespace consim
