#pragma once

// Deterministic report output: aligned plain-text tables or one JSON object
// per row. Both formats carry the same rows in the same order.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cycrank::cli {

enum class Format { Table, JsonLines };

using Cell = nlohmann::ordered_json;

class Table {
public:
    Table(std::string section, std::vector<std::string> columns)
        : section_(std::move(section)), columns_(std::move(columns)) {}

    void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }
    bool empty() const noexcept { return rows_.empty(); }

    void write(std::ostream& out, Format format) const {
        if (format == Format::JsonLines) {
            for (const auto& row : rows_) {
                Cell obj;
                obj["section"] = section_;
                for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = row[i];
                out << obj.dump() << '\n';
            }
            return;
        }
        std::vector<std::vector<std::string>> text;
        std::vector<std::size_t> width(columns_.size());
        for (std::size_t i = 0; i < columns_.size(); ++i) width[i] = columns_[i].size();
        for (const auto& row : rows_) {
            auto& line = text.emplace_back();
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                line.push_back(row[i].is_string() ? row[i].get<std::string>() : row[i].dump());
                width[i] = std::max(width[i], display_width(line.back()));
            }
        }
        out << "[" << section_ << "]\n";
        print(out, columns_, width);
        for (const auto& line : text) print(out, line, width);
        out << '\n';
    }

private:
    // UTF-8 continuation bytes take no column.
    static std::size_t display_width(const std::string& s) {
        return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
    }

    static void print(std::ostream& out, const std::vector<std::string>& cells, const std::vector<std::size_t>& width) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            line += cells[i];
            if (i + 1 < cells.size()) line += std::string(width[i] - display_width(cells[i]) + 2, ' ');
        }
        out << line << '\n';
    }

    std::string section_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace cycrank::cli
