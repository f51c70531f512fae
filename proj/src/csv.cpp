/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pcsim::csv {

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

Table read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    Table table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (line_no == 1) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size())
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": expected " + std::to_string(table.header.size()) +
                                        " columns, got " + std::to_string(cells.size()));
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty())
        throw std::invalid_argument(path.string() + ": empty file, header expected");
    return table;
}

void write(const std::filesystem::path& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument(path.string() + ": row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    if (!out) throw io_error("write failed for " + path.string());
}

std::string format(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double to_double(const std::string& cell, std::size_t line_for_error) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(cell, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(line_for_error) +
                                    ": not a number: '" + cell + "'");
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size())
        throw std::invalid_argument("line " + std::to_string(line_for_error) +
                                    ": trailing junk in '" + cell + "'");
    return value;
}

}  // namespace pcsim::csv
