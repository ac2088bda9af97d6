#include "cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace semtrack::cli {

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width does not match its header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_cell(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
    } visitor;
    return std::visit(visitor, c);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

nlohmann::json cell_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return std::stod(format_number(*d));
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const Report& r) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_field(r.columns[i]);
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(format_cell(row[i]));
        os << '\n';
    }
}

void write_json(std::ostream& os, const Report& r) {
    nlohmann::json j;
    j["title"] = r.title;
    j["provenance"] = r.provenance;
    j["columns"] = r.columns;
    auto rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

void write_pretty(std::ostream& os, const Report& r) {
    std::vector<std::vector<std::string>> text;
    text.push_back(r.columns);
    for (const auto& row : r.rows) {
        std::vector<std::string> line;
        for (const auto& c : row) {
            if (const auto* d = std::get_if<double>(&c); d && std::isfinite(*d)) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.3f", *d);
                line.emplace_back(buf);
            } else {
                line.push_back(format_cell(c));
            }
        }
        text.push_back(std::move(line));
    }
    std::vector<std::size_t> width(r.columns.size(), 0);
    for (const auto& line : text)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    if (!r.title.empty()) os << r.title << '\n';
    for (std::size_t k = 0; k < text.size(); ++k) {
        for (std::size_t i = 0; i < text[k].size(); ++i) {
            os << (i ? "  " : "");
            os << std::string(width[i] - text[k][i].size(), ' ') << text[k][i];
        }
        os << '\n';
        if (k == 0) {
            std::size_t total = 0;
            for (auto w : width) total += w + 2;
            os << std::string(total > 2 ? total - 2 : total, '-') << '\n';
        }
    }
}

std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace semtrack::cli
