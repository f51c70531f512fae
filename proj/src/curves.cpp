/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "pcsim/curves.hpp"

namespace pcsim {

namespace {

TabulatedOcv make_nmc() {
    return TabulatedOcv(
        {0.00, 0.05, 0.10, 0.20, 0.30, 0.40, 0.50, 0.60, 0.70, 0.80, 0.90, 1.00},
        {3.30, 3.43, 3.49, 3.55, 3.60, 3.65, 3.72, 3.81, 3.90, 3.99, 4.08, 4.20});
}

TabulatedOcv make_lfp() {
    return TabulatedOcv({0.00, 0.02, 0.05, 0.10, 0.20, 0.30, 0.40, 0.50, 0.60, 0.70, 0.80, 0.90,
                         0.95, 0.98, 1.00},
                        {2.80, 3.05, 3.20, 3.27, 3.305, 3.32, 3.33, 3.34, 3.35, 3.365, 3.38,
                         3.41, 3.45, 3.52, 3.65});
}

}  // namespace

const TabulatedOcv& nmc_gr_like() {
    static const TabulatedOcv curve = make_nmc();
    return curve;
}

const TabulatedOcv& lfp_gr_like() {
    static const TabulatedOcv curve = make_lfp();
    return curve;
}

AffineOcv nmc_gr_affine() { return AffineOcv(0.89, 3.31); }

AffineOcv lfp_gr_affine() { return AffineOcv(0.60, 3.00); }

std::optional<TabulatedOcv> builtin_curve(std::string_view name) {
    if (name == "nmc-gr-like") return nmc_gr_like();
    if (name == "lfp-gr-like") return lfp_gr_like();
    return std::nullopt;
}

}  // namespace pcsim
