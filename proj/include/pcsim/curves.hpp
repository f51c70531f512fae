/*
 * Copyright (c) The pcsim Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string_view>

#include "pcsim/ocv.hpp"

namespace pcsim {

// Bundled synthetic chemistry curves. The tabulated curves are
// qualitatively shaped after the two common cathode families: a
// smoothly rising NMC/graphite profile (3.3 V to 4.2 V) and an
// LFP/graphite profile with a flat plateau near 3.3 V and steep ends.
// The affine companions are coarse straight-line fits to the same
// voltage windows.

const TabulatedOcv& nmc_gr_like();
const TabulatedOcv& lfp_gr_like();

AffineOcv nmc_gr_affine();  // (alpha, beta) = (0.89, 3.31)
AffineOcv lfp_gr_affine();  // (alpha, beta) = (0.60, 3.00)

/// Looks up a bundled tabulated curve by name ("nmc-gr-like",
/// "lfp-gr-like"); nullopt for unknown names.
std::optional<TabulatedOcv> builtin_curve(std::string_view name);

}  // namespace pcsim
