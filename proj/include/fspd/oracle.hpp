/**
 * @file oracle.hpp
 * @brief Independent pricers used to cross-check the series engine.
 *
 * Three routes that share no series code with the primary pricer:
 *  - the Black-Scholes closed form (erf-based), the alpha = 2, gamma = 1
 *    limit;
 *  - convolution of the payoff against the Mellin-Barnes transition
 *    density;
 *  - a two-line Mellin-Barnes representation of the price itself, with the
 *    inner line reduced in closed form and the outer line split into a
 *    decaying piece plus a ridge horseshoe.
 * Pairwise agreement of series, convolution, and the two-line route is the
 * strongest correctness signal the library offers.
 */

#pragma once

#include <utility>

#include "fspd/contour.hpp"
#include "fspd/types.hpp"

namespace fspd {

/// Black-Scholes European call (continuous dividend yield). sigma > 0.
double bs_closed_form(const MarketQuote& quote, double sigma);

/**
 * Call price as K e^{-r tau} times the integral of (e^{y - A} - 1) against
 * the maximally asymmetric transition density over y > A,
 * A = -log_moneyness - mu tau.
 *
 * Five fixed segments cover [A, A + 9]; width-4 extensions follow until a
 * segment contributes less than quad.tol / 10 relative, capped at
 * quad.max_index extensions (NoConvergence beyond).
 */
double price_by_convolution(const ModelParams& params, const MarketQuote& quote, double mu,
                            const SeriesControl& quad = {});

/**
 * Call price by the two-line Mellin-Barnes representation.
 *
 * contours.first is the outer line (abscissa c1, default -1.6; must sit at
 * least 0.1 from every integer and more than 1 below c2). contours.second
 * is the inner line (abscissa c2 in (0, 1), default 0.4); the inner
 * integral is closed in exact form, so c2 enters admissibility checking
 * only. Requires gamma < alpha and a positive adjusted gap
 * -log_moneyness - mu tau. The returned value is the real part; an
 * imaginary residual above 1e-6 of the price or an unstable refinement
 * raises ContourError.
 */
double price_by_mb2(const ModelParams& params, const MarketQuote& quote, double mu,
                    const std::pair<ContourSpec, ContourSpec>& contours = {{-1.6, 0.0, 64},
                                                                           {0.4, 0.0, 64}});

}  // namespace fspd
