#ifndef OSC_HARNESS_TABLE_HPP
#define OSC_HARNESS_TABLE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace osc::harness {

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

/// Fixed-schema result table. Doubles are written in shortest round-trip form, so equal
/// tables serialise to identical bytes.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<bool> flagged;  // per row: budget exhausted or target unreachable

    Table() = default;
    Table(std::string name, std::vector<std::string> columns);

    /// Appends a row; throws std::invalid_argument when its width differs from the schema.
    void add_row(std::vector<Cell> row, bool flag = false);

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
    int flagged_count() const;
    int column_index(std::string_view column) const;  // throws std::out_of_range

    const Cell& at(std::size_t row, std::string_view column) const;
    double number(std::size_t row, std::string_view column) const;  // integer or double cell
    std::vector<double> numbers(std::string_view column) const;
};

enum class Format { csv, json, svg };

Format parse_format(const std::string& name);  // throws std::invalid_argument
std::string extension(Format format);

std::string format_cell(const Cell& cell);

/// Header line plus one line per row. Strings containing separators are quoted.
std::string to_csv(const Table& table);

/// Array of objects keyed by column name, in column order.
nlohmann::ordered_json to_json(const Table& table);

/// Writes `text` to `path`, creating parent directories. Throws std::runtime_error when the
/// file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace osc::harness

#endif  // OSC_HARNESS_TABLE_HPP
