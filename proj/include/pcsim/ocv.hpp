/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pcsim {

/// Open-circuit voltage U(z) = alpha * z + beta. Extrapolates linearly
/// outside [0, 1], so callers may evaluate unconstrained trajectories.
struct AffineOcv {
    double alpha;  // V, characteristic slope (> 0)
    double beta;   // V, voltage at z = 0 (> 0)

    AffineOcv(double alpha_v, double beta_v);

    double eval(double z) const { return alpha * z + beta; }
    double slope(double /*z*/) const { return alpha; }
};

struct SlopeBounds {
    double k1;  // min dU/dz over the curve domain
    double k2;  // max dU/dz over the curve domain
};

/// Tabulated monotone OCV curve interpolated with a shape-preserving
/// cubic Hermite scheme (Fritsch-Butland tangents). The interpolant is
/// C1 and strictly increasing for strictly increasing knot data.
///
/// The domain is the knot range (normally [0, 1]); evaluation outside
/// it throws std::domain_error rather than extrapolating.
class TabulatedOcv {
public:
    /// Knots must be strictly increasing in both soc and voltage,
    /// with soc within [0, 1] and at least 2 knots.
    TabulatedOcv(std::vector<double> soc, std::vector<double> voltage);

    double eval(double z) const;
    /// dU/dz; at interior knots the interpolant is C1, so the
    /// left-limit convention used here coincides with the right limit.
    double slope(double z) const;
    /// Exact extrema of the piecewise-quadratic derivative.
    SlopeBounds slope_bounds() const;

    std::span<const double> soc() const { return soc_; }
    std::span<const double> voltage() const { return volt_; }
    std::span<const double> tangents() const { return tan_; }

    double z_min() const { return soc_.front(); }
    double z_max() const { return soc_.back(); }

private:
    std::vector<double> soc_;
    std::vector<double> volt_;
    std::vector<double> tan_;  // dU/dz at each knot

    std::size_t segment(double z) const;
};

using OcvCurve = std::variant<AffineOcv, TabulatedOcv>;

double ocv_eval(const OcvCurve& curve, double z);
double ocv_slope(const OcvCurve& curve, double z);
SlopeBounds ocv_slope_bounds(const OcvCurve& curve);

/// Loads a two-column CSV with header `soc,voltage_v`, rows ascending
/// in soc. Parse failures report the offending line number; rows that
/// break strict monotonicity report the first offending row.
TabulatedOcv load_tabulated(const std::filesystem::path& path);

}  // namespace pcsim
