/**
 * @file types.hpp
 * @brief Value types and validation for the space-time fractional model.
 *
 * Model parameters: alpha is the spatial (Riesz-Feller) order, gamma the
 * temporal (Caputo) order, sigma the volatility scale, theta the asymmetry.
 * Pricing pins theta to its maximal negative skew alpha - 2; density
 * evaluation admits the full asymmetry fan |theta| <= min(alpha, 2 - alpha).
 */

#pragma once

#include "fspd/errors.hpp"

namespace fspd {

/// Diffusion model parameters.
struct ModelParams {
    double alpha = 1.7;   ///< spatial order, 1 < alpha <= 2
    double gamma = 0.96;  ///< temporal order, 0 < gamma <= alpha
    double sigma = 0.2;   ///< volatility scale, sigma > 0
    double theta = -0.3;  ///< asymmetry, |theta| <= min(alpha, 2 - alpha)
};

/// One European option quote.
struct MarketQuote {
    double spot = 100.0;
    double strike = 100.0;
    double rate = 0.0;       ///< continuously compounded risk-free rate
    double dividend = 0.0;   ///< continuous dividend yield
    double maturity = 1.0;   ///< year fraction, > 0
};

/// Truncation controls for series evaluation.
struct SeriesControl {
    double tol = 1e-6;      ///< stop once the last shell contributes < tol
    int max_index = 64;     ///< cap on the rectangular shell index, >= 2
    bool rectangular = true;  ///< rectangular shell order (the only mode)
};

/// Outcome of a series price evaluation.
struct PriceResult {
    double price = 0.0;
    int terms_used = 0;        ///< count of nonzero terms summed
    double last_increment = 0.0;  ///< contribution of the final shell
    bool converged = false;
};

/**
 * Validate model parameters, throwing DomainError on the first violation.
 *
 * @param for_pricing when true, additionally require theta == alpha - 2
 *        (maximal negative asymmetry) and gamma > 1 - 1/alpha (the region
 *        where the drift-factor series representation converges).
 *
 * Checks run in declaration order: alpha, gamma, sigma, theta. Boundary
 * values alpha == 2, gamma == alpha, gamma == 1 are all accepted.
 */
void validate_model(const ModelParams& params, bool for_pricing);

/// Validate a quote: spot, strike, maturity > 0; rate, dividend finite.
void validate_quote(const MarketQuote& quote);

/// Validate series controls: tol > 0, max_index >= 2.
void validate_control(const SeriesControl& control);

/// ln(S/K) + (r - q) * tau, the forward log-moneyness of the quote.
double log_moneyness(const MarketQuote& quote);

}  // namespace fspd
