/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace pcsim {

BoundParams bound_params(const CellParams& cell1, const CellParams& cell2, const OcvCurve& ocv) {
    validate(cell1);
    validate(cell2);
    const double rt = cell1.r + cell2.r;
    const auto [k1, k2] = ocv_slope_bounds(ocv);
    if (!(k1 > 0.0))
        throw std::invalid_argument("bound_params: OCV slope must be positive everywhere");
    BoundParams bp{};
    bp.a_coef = -(1.0 / rt) * (1.0 / cell1.q + 1.0 / cell2.q);
    bp.b_coef = (1.0 / rt) * (cell1.r / cell2.q - cell2.r / cell1.q);
    bp.k1 = k1;
    bp.k2 = k2;
    return bp;
}

bool input_condition(const BoundParams& bp, double i_max) {
    if (i_max < 0.0) throw std::invalid_argument("input_condition: i_max must be >= 0");
    if (bp.b_coef == 0.0) return true;  // QR-matched: any input admissible
    return i_max <= std::abs(bp.a_coef * bp.k1 / bp.b_coef);
}

BoundValue imbalance_bound(const BoundParams& bp, double dz0, double i_max, double t) {
    const double decay = std::exp(bp.k1 * bp.a_coef * t);  // a_coef < 0
    const double asymptote =
        bp.b_coef == 0.0 ? 0.0 : std::abs(bp.b_coef / (bp.a_coef * bp.k1)) * i_max;
    return {std::abs(dz0) * decay + asymptote * (1.0 - decay), input_condition(bp, i_max)};
}

}  // namespace pcsim
