#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace semtrack::cli {

// Empty, real, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Report {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json provenance = nlohmann::json::object();

    void add_row(std::vector<Cell> row);
};

// 12 significant digits, shortest of %g form; "nan"/"inf" for non-finite.
std::string format_number(double v);

std::string format_cell(const Cell& c);

// RFC 4180: header row, CRLF-free, fields quoted only when needed.
void write_csv(std::ostream& os, const Report& r);

void write_json(std::ostream& os, const Report& r);

// Aligned table with reals rounded to 3 decimals.
void write_pretty(std::ostream& os, const Report& r);

// Splits one CSV record produced by write_csv.
std::vector<std::string> parse_csv_line(const std::string& line);

std::uint64_t fnv1a64(const std::string& bytes) noexcept;

inline Cell flag_cell(bool b) { return std::int64_t{b ? 1 : 0}; }

}  // namespace semtrack::cli
