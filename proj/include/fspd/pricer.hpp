/**
 * @file pricer.hpp
 * @brief European call pricing by the rapidly convergent double series.
 *
 * With A = -log_moneyness - mu tau and B = -mu tau^gamma > 0, the call value
 * is
 *   C = (K e^{-r tau} / alpha) sum_{n>=0, m>=1}
 *       (-1)^n / (n! Gamma(1 - gamma (n - m) / alpha))
 *       A^n B^{(m-n)/alpha},
 * summed over rectangular shells max(n, m) = N. Terms are evaluated in
 * signed-log form so magnitudes spanning hundreds of orders neither overflow
 * nor lose sign, and accumulated with compensated summation. Terms whose
 * Gamma argument is a non-positive integer are exactly zero.
 */

#pragma once

#include <vector>

#include "fspd/types.hpp"

namespace fspd {

/// Rectangular block of series terms, n in [0, n_max], m in [1, m_max].
struct TermGrid {
    int n_max = 0;
    int m_max = 0;
    std::vector<double> values;  ///< row-major, index n * m_max + (m - 1)

    double operator()(int n, int m) const { return values[static_cast<std::size_t>(n) * m_max + (m - 1)]; }
};

/**
 * Call price by shell-summed double series.
 *
 * mu is the drift correction (must be negative). Shells are added until the
 * last one contributes less than control.tol in magnitude (with at least
 * three shells summed); exhausting control.max_index throws NoConvergence.
 * A converged value below -10 tol throws NegativePrice.
 *
 * Accuracy note: the representation is exact for a positive adjusted gap
 * -[log] - mu tau (spot at or below the drift-adjusted forward strike) and,
 * when gamma == 1, for any gap. For gamma < 1 and a negative gap the sum
 * continues the positive-gap branch analytically and overshoots the true
 * price, with the relative drift growing with |gap| / (-mu tau^gamma)^(1/alpha);
 * price_by_convolution is the reference in that regime.
 */
PriceResult call_price_series(const ModelParams& params, const MarketQuote& quote, double mu,
                              const SeriesControl& control = {});

/// Individual series terms for inspection, without convergence logic.
TermGrid term_grid(const ModelParams& params, const MarketQuote& quote, double mu, int n_max,
                   int m_max);

/// Parameter pinnings with a structurally simpler series of their own.
enum class SpecialCase {
    fmls,                  ///< gamma == 1: space-fractional with stable drift
    black_scholes_series,  ///< alpha == 2, gamma == 1: Gaussian series form
    neural,                ///< gamma == alpha: double-factorial series
    time_fractional,       ///< alpha == 2: fractional clock only
};

/**
 * Call price by the specialized series of the given pinning; the drift
 * correction is derived internally (stable closed form for fmls and the
 * Gaussian case, series route otherwise). Throws DomainError when params do
 * not satisfy the pinning. Agrees with call_price_series to 1e-9 relative.
 */
PriceResult call_price_special(SpecialCase special, const ModelParams& params,
                               const MarketQuote& quote, const SeriesControl& control = {});

/**
 * Leading-order at-the-money-forward value for alpha == 2:
 *   C ~ (S e^{-q tau} / 2) (sigma / Gamma(1 + gamma/2))
 *       sqrt(tau^gamma / Gamma(1 + 2 gamma)).
 * Requires |log_moneyness| <= 1e-12. sigma == 0 returns 0. The mu argument
 * is accepted for signature symmetry with the other pricers and unused.
 */
double atmf_leading_order(const ModelParams& params, const MarketQuote& quote, double mu);

}  // namespace fspd
