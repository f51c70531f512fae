/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcsim::csv {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

/// Reads a comma-separated table with a header row. Throws io_error if
/// the file cannot be opened and std::invalid_argument (with the line
/// number) for structurally broken rows.
Table read(const std::filesystem::path& path);

/// Writes a table; every row must match the header width.
void write(const std::filesystem::path& path, const Table& table);

/// Shortest round-trip formatting for doubles ("%.12g").
std::string format(double value);

double to_double(const std::string& cell, std::size_t line_for_error);

}  // namespace pcsim::csv
