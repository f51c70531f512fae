/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "pcsim/csv.hpp"

namespace pcsim::svg {

namespace {

constexpr double width = 860.0;
constexpr double height = 520.0;
constexpr double ml = 70.0, mr = 160.0, mt = 40.0, mb = 55.0;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (double v : s.x) { x_lo = std::min(x_lo, v); x_hi = std::max(x_hi, v); }
        for (double v : s.y) { y_lo = std::min(y_lo, v); y_hi = std::max(y_hi, v); }
    }
    if (!(x_hi > x_lo)) { x_hi = x_lo + 1.0; }
    if (!(y_hi > y_lo)) { y_hi = y_lo + 1.0; y_lo -= 1.0; }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

    std::ofstream out(path);
    if (!out) throw csv::io_error("cannot open " + path.string() + " for writing");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' font-family='sans-serif' font-size='13'>\n";
    out << "<rect x='" << ml << "' y='" << mt << "' width='" << width - ml - mr << "' height='"
        << height - mt - mb << "' fill='none' stroke='#444'/>\n";
    out << "<text x='" << width / 2 << "' y='22' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    out << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 14
        << "' text-anchor='middle'>" << x_label << "</text>\n";
    out << "<text x='18' y='" << (mt + height - mb) / 2 << "' text-anchor='middle' transform='rotate(-90 18 "
        << (mt + height - mb) / 2 << ")'>" << y_label << "</text>\n";

    for (int k = 0; k <= 5; ++k) {
        const double xv = x_lo + (x_hi - x_lo) * k / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * k / 5.0;
        out << "<text x='" << px(xv) << "' y='" << height - mb + 18
            << "' text-anchor='middle' font-size='11'>" << csv::format(xv) << "</text>\n";
        out << "<text x='" << ml - 6 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-size='11'>" << csv::format(yv) << "</text>\n";
        out << "<line x1='" << ml << "' y1='" << py(yv) << "' x2='" << width - mr << "' y2='"
            << py(yv) << "' stroke='#ddd'/>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % (sizeof palette / sizeof palette[0])];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.4' points='";
        const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 4000);
        for (std::size_t k = 0; k < s.x.size(); k += stride)
            out << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
        if (!s.x.empty()) out << px(s.x.back()) << ',' << py(s.y.back());
        out << "'/>\n";
        const double ly = mt + 18.0 * (si + 1);
        out << "<line x1='" << width - mr + 10 << "' y1='" << ly << "' x2='" << width - mr + 34
            << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'/>\n";
        out << "<text x='" << width - mr + 40 << "' y='" << ly + 4 << "' font-size='12'>"
            << s.name << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace pcsim::svg
