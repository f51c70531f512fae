/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pcsim::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal static line plot, enough to eyeball CSV outputs.
void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

}  // namespace pcsim::svg
