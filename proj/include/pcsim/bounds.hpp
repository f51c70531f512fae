/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "pcsim/analytic.hpp"
#include "pcsim/ocv.hpp"

namespace pcsim {

/// Coefficients of the SOC-imbalance comparison system
///   d|dz|/dt <= k1 * a_coef * |dz| + |b_coef| * |I|
/// with a_coef < 0 and 0 < k1 <= dU/dz <= k2 over the full SOC domain.
struct BoundParams {
    double a_coef;  // -(1/r_tot)(1/q1 + 1/q2), < 0
    double b_coef;  // (1/r_tot)(r1/q2 - r2/q1); 0 iff QR-matched
    double k1;      // min OCV slope
    double k2;      // max OCV slope
};

BoundParams bound_params(const CellParams& cell1, const CellParams& cell2,
                         const OcvCurve& ocv);

/// Input smallness condition: i_max <= |a_coef * k1 / b_coef|. A
/// QR-matched system (b_coef == 0) admits any input.
bool input_condition(const BoundParams& bp, double i_max);

struct BoundValue {
    double value;
    /// True when the input condition held, i.e. the bound carries the
    /// theorem's guarantee. The curve is still returned otherwise as a
    /// diagnostic.
    bool guaranteed;
};

/// Exponential envelope on |dz(t)| under any input with magnitude at
/// most i_max:
///   |dz0| e^(k1 a t) + |b/(a k1)| i_max (1 - e^(k1 a t)).
/// Decays from |dz0| toward |b/(a k1)| i_max; with an affine OCV the
/// asymptote equals |kappa| * i_max.
BoundValue imbalance_bound(const BoundParams& bp, double dz0, double i_max, double t);

}  // namespace pcsim
