/**
 * @file contour.hpp
 * @brief Contour controls shared by the Mellin-Barnes integrators.
 */

#pragma once

namespace fspd {

/// Placement and resolution of a Mellin-Barnes contour.
///
/// abscissa is the real part of the vertical line (or the turning point of a
/// horseshoe). half_length, when positive, overrides the automatically chosen
/// truncation height; 0 requests the built-in decay-based choice. nodes is
/// the minimum quadrature node budget; implementations may exceed it while
/// refining but never go below it.
struct ContourSpec {
    double abscissa = 0.5;
    double half_length = 0.0;
    int nodes = 64;
};

}  // namespace fspd
