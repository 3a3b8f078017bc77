#include "osc/harness/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace osc::harness {

Table::Table(std::string name_, std::vector<std::string> columns_)
    : name(std::move(name_)), columns(std::move(columns_)) {}

void Table::add_row(std::vector<Cell> row, bool flag) {
    if (row.size() != columns.size())
        throw std::invalid_argument("row width " + std::to_string(row.size()) + " does not match " +
                                    std::to_string(columns.size()) + " columns of table '" + name + "'");
    rows.push_back(std::move(row));
    flagged.push_back(flag);
}

int Table::flagged_count() const {
    int count = 0;
    for (bool f : flagged) count += f ? 1 : 0;
    return count;
}

int Table::column_index(std::string_view column) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == column) return static_cast<int>(c);
    throw std::out_of_range("no column '" + std::string(column) + "' in table '" + name + "'");
}

const Cell& Table::at(std::size_t row, std::string_view column) const {
    return rows.at(row).at(static_cast<std::size_t>(column_index(column)));
}

double Table::number(std::size_t row, std::string_view column) const {
    const Cell& cell = at(row, column);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    if (const auto* u = std::get_if<std::uint64_t>(&cell)) return static_cast<double>(*u);
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    throw std::invalid_argument("column '" + std::string(column) + "' is not numeric");
}

std::vector<double> Table::numbers(std::string_view column) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) out.push_back(number(r, column));
    return out;
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    if (name == "svg") return Format::svg;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv, json or svg)");
}

std::string extension(Format format) {
    switch (format) {
        case Format::csv: return ".csv";
        case Format::json: return ".json";
        case Format::svg: return ".svg";
    }
    return "";
}

namespace {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += quote(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += quote(format_cell(row[c]));
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const Table& table) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            const Cell& cell = row[c];
            if (const auto* i = std::get_if<std::int64_t>(&cell)) {
                obj[table.columns[c]] = *i;
            } else if (const auto* u = std::get_if<std::uint64_t>(&cell)) {
                obj[table.columns[c]] = *u;
            } else if (const auto* d = std::get_if<double>(&cell)) {
                // JSON has no inf/nan; keep them as strings rather than null.
                if (std::isfinite(*d)) obj[table.columns[c]] = *d;
                else obj[table.columns[c]] = format_double(*d);
            } else {
                obj[table.columns[c]] = std::get<std::string>(cell);
            }
        }
        out.push_back(std::move(obj));
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace osc::harness
