/**
 * @file risk_neutral.hpp
 * @brief The risk-neutral drift correction mu, by four independent routes.
 *
 * The martingale condition fixes a drift correction mu < 0 per unit of the
 * power maturity tau^gamma. Routes:
 *  - closed form: gamma == 1 reduces mu to the stable-law cumulant mu1.
 *  - series: mu = -log sum_n (-1)^n Gamma(1+alpha n) / (n! Gamma(1+gamma
 *    alpha n)) mu1^n, entire in mu1 for gamma > 1 - 1/alpha.
 *  - Mellin-Barnes: the same sum written as a horseshoe contour integral
 *    wrapping the positive real axis.
 *  - subordination: mu = -log int_0^inf M_gamma(l) exp(-l^alpha mu1) dl for
 *    gamma < 1, with the Wright M density as time-change kernel.
 * The three non-closed routes share no code path, which is what makes their
 * triangle agreement a meaningful correctness check.
 */

#pragma once

#include "fspd/contour.hpp"
#include "fspd/types.hpp"

namespace fspd {

/// Which computation produced a MuResult.
enum class MuRoute {
    closed_form,
    series,
    mellin_barnes,
    subordination,
};

/// Drift correction plus provenance.
struct MuResult {
    double mu = 0.0;
    MuRoute route = MuRoute::series;
    int terms_or_nodes = 0;  ///< series terms or quadrature nodes consumed
};

/// Stable-law cumulant mu1 = (sigma / sqrt 2)^alpha sec(pi alpha / 2),
/// negative on 1 < alpha <= 2 (equal to -sigma^2/2 at alpha == 2).
/// This is the exact drift correction when gamma == 1.
double mu_stable(double alpha, double sigma);

/**
 * Drift correction by the alternating Gamma-ratio series.
 *
 * Requires gamma > 1 - 1/alpha (series domain); throws DomainError
 * otherwise. Throws NonPositiveSum if the truncated sum is not positive and
 * NoConvergence if max_terms is exhausted before the relative tolerance.
 */
MuResult mu_series(const ModelParams& params, double tol = 1e-12, int max_terms = 200);

/**
 * Drift correction by horseshoe Mellin-Barnes quadrature.
 *
 * The contour runs from +X - i eps leftward below the positive axis, turns
 * at Re s = contour.abscissa (required in (0, 1)), and returns above it;
 * X is extended automatically until the integrand tail is negligible.
 * contour.half_length > 0 overrides the leg offset eps = 1. Throws
 * ContourError when the quadrature leaves an imaginary residual or an
 * unresolved tail.
 */
MuResult mu_mellin_barnes(const ModelParams& params, const ContourSpec& contour = {});

/**
 * Drift correction by subordination quadrature, gamma < 1 strictly
 * (DomainError at gamma >= 1): integrates the Wright M time-change kernel
 * against the stable exponent. quad_nodes is the node budget for the
 * truncated integral; the truncation point balances the kernel tail against
 * float64 cancellation in the kernel series.
 */
MuResult mu_subordination(const ModelParams& params, int quad_nodes = 384);

}  // namespace fspd
