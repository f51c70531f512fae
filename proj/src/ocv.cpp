/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/ocv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pcsim/csv.hpp"

namespace pcsim {

AffineOcv::AffineOcv(double alpha_v, double beta_v) : alpha(alpha_v), beta(beta_v) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("affine OCV: alpha must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("affine OCV: beta must be > 0");
}

namespace {

// Fritsch-Butland knot tangents: weighted harmonic means of adjacent
// secants, one-sided secants at the ends. Positive secants yield
// positive tangents, so the Hermite interpolant is monotone.
std::vector<double> butland_tangents(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x[k + 1] - x[k];
        d[k] = (y[k + 1] - y[k]) / h[k];
    }
    std::vector<double> m(n);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double a = (h[k - 1] + 2.0 * h[k]) / (3.0 * (h[k - 1] + h[k]));
        m[k] = d[k - 1] * d[k] / (a * d[k] + (1.0 - a) * d[k - 1]);
    }
    return m;
}

}  // namespace

TabulatedOcv::TabulatedOcv(std::vector<double> soc, std::vector<double> voltage)
    : soc_(std::move(soc)), volt_(std::move(voltage)) {
    if (soc_.size() != volt_.size())
        throw std::invalid_argument("tabulated OCV: soc/voltage size mismatch");
    if (soc_.size() < 2) throw std::invalid_argument("tabulated OCV: need at least 2 knots");
    for (std::size_t k = 0; k < soc_.size(); ++k) {
        if (!std::isfinite(soc_[k]) || !std::isfinite(volt_[k]))
            throw std::invalid_argument("tabulated OCV: non-finite knot at row " +
                                        std::to_string(k + 1));
        if (soc_[k] < 0.0 || soc_[k] > 1.0)
            throw std::invalid_argument("tabulated OCV: soc outside [0,1] at row " +
                                        std::to_string(k + 1));
        if (k > 0 && !(soc_[k] > soc_[k - 1]))
            throw std::invalid_argument("tabulated OCV: soc not strictly increasing at row " +
                                        std::to_string(k + 1));
        if (k > 0 && !(volt_[k] > volt_[k - 1]))
            throw std::invalid_argument("tabulated OCV: voltage not strictly increasing at row " +
                                        std::to_string(k + 1));
    }
    tan_ = butland_tangents(soc_, volt_);
}

std::size_t TabulatedOcv::segment(double z) const {
    // Index of the segment containing z; knots resolve to the segment
    // on their left (left-limit convention), except the first knot.
    auto it = std::lower_bound(soc_.begin() + 1, soc_.end(), z);
    std::size_t k = static_cast<std::size_t>(it - soc_.begin()) - 1;
    return std::min(k, soc_.size() - 2);
}

double TabulatedOcv::eval(double z) const {
    if (!(z >= soc_.front() && z <= soc_.back()))
        throw std::domain_error("tabulated OCV: z=" + std::to_string(z) + " outside domain [" +
                                std::to_string(soc_.front()) + ", " +
                                std::to_string(soc_.back()) + "]");
    const std::size_t k = segment(z);
    const double h = soc_[k + 1] - soc_[k];
    const double t = (z - soc_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * volt_[k] + h10 * h * tan_[k] + h01 * volt_[k + 1] + h11 * h * tan_[k + 1];
}

double TabulatedOcv::slope(double z) const {
    if (!(z >= soc_.front() && z <= soc_.back()))
        throw std::domain_error("tabulated OCV: slope at z=" + std::to_string(z) +
                                " outside domain");
    const std::size_t k = segment(z);
    const double h = soc_[k + 1] - soc_[k];
    const double t = (z - soc_[k]) / h;
    const double d = (volt_[k + 1] - volt_[k]) / h;
    return tan_[k] * (3.0 * t * t - 4.0 * t + 1.0) + tan_[k + 1] * (3.0 * t * t - 2.0 * t) +
           d * (6.0 * t - 6.0 * t * t);
}

SlopeBounds TabulatedOcv::slope_bounds() const {
    // Per segment the derivative is the quadratic
    //   A t^2 + B t + C,  A = 3(m0 + m1 - 2d), B = 6d - 4m0 - 2m1, C = m0,
    // so the extrema are the knot tangents plus any interior vertex.
    double lo = tan_[0];
    double hi = tan_[0];
    for (std::size_t k = 0; k + 1 < soc_.size(); ++k) {
        const double h = soc_[k + 1] - soc_[k];
        const double d = (volt_[k + 1] - volt_[k]) / h;
        const double m0 = tan_[k];
        const double m1 = tan_[k + 1];
        lo = std::min({lo, m0, m1});
        hi = std::max({hi, m0, m1});
        const double a = 3.0 * (m0 + m1 - 2.0 * d);
        const double b = 6.0 * d - 4.0 * m0 - 2.0 * m1;
        if (a != 0.0) {
            const double tv = -b / (2.0 * a);
            if (tv > 0.0 && tv < 1.0) {
                const double sv = a * tv * tv + b * tv + m0;
                lo = std::min(lo, sv);
                hi = std::max(hi, sv);
            }
        }
    }
    return {lo, hi};
}

double ocv_eval(const OcvCurve& curve, double z) {
    return std::visit([z](const auto& c) { return c.eval(z); }, curve);
}

double ocv_slope(const OcvCurve& curve, double z) {
    return std::visit([z](const auto& c) { return c.slope(z); }, curve);
}

SlopeBounds ocv_slope_bounds(const OcvCurve& curve) {
    if (const auto* affine = std::get_if<AffineOcv>(&curve))
        return {affine->alpha, affine->alpha};
    return std::get<TabulatedOcv>(curve).slope_bounds();
}

TabulatedOcv load_tabulated(const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    if (table.header != std::vector<std::string>{"soc", "voltage_v"})
        throw std::invalid_argument(path.string() + ": expected header 'soc,voltage_v'");
    std::vector<double> soc, volt;
    soc.reserve(table.rows.size());
    volt.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::size_t line = i + 2;  // header is line 1
        soc.push_back(csv::to_double(table.rows[i][0], line));
        volt.push_back(csv::to_double(table.rows[i][1], line));
        if (i > 0 && !(soc[i] > soc[i - 1]))
            throw std::invalid_argument(path.string() + ":" + std::to_string(line) +
                                        ": soc not strictly increasing");
        if (i > 0 && !(volt[i] > volt[i - 1]))
            throw std::invalid_argument(path.string() + ":" + std::to_string(line) +
                                        ": voltage not strictly increasing");
    }
    return TabulatedOcv(std::move(soc), std::move(volt));
}

}  // namespace pcsim
