/**
 * @file special.hpp
 * @brief Gamma-family special functions used throughout the library.
 *
 * All series summation in the pricing modules runs through signed logarithms
 * so that individual terms spanning hundreds of orders of magnitude neither
 * overflow nor lose their sign. The primitives here supply the pieces:
 * signed real log-Gamma, the reciprocal Gamma (entire, exact zeros at the
 * poles), the principal-branch complex log-Gamma for contour integrands, and
 * the two entire transcendental series (Mittag-Leffler, Wright M).
 */

#pragma once

#include <complex>

#include "fspd/errors.hpp"

namespace fspd {

/// Logarithm-magnitude plus sign decomposition: value = sign * exp(log_abs).
/// sign is exactly 0 if and only if the represented value is exactly zero
/// (log_abs is then meaningless and set to 0).
struct SignedLog {
    double log_abs = 0.0;
    int sign = 0;
};

/**
 * ln|Gamma(x)| together with the sign of Gamma(x).
 *
 * Throws PoleError when x is a non-positive integer. Relative accuracy of
 * log_abs is 1e-13 or better for |x| <= 200 away from the poles.
 */
SignedLog log_gamma_signed(double x);

/**
 * 1 / Gamma(x), entire in x.
 *
 * Returns exactly 0.0 at non-positive integers; never throws. May overflow
 * to infinity for large negative non-integer x where |Gamma| underflows.
 */
double reciprocal_gamma(double x);

/**
 * Principal branch of log Gamma(z).
 *
 * Lanczos evaluation for Re z >= 0.5; reflection with a branch-tracked
 * log-sine otherwise; the lower half plane maps through conjugation.
 * Accuracy 1e-12 or better for Re z in [-10, 50], |Im z| <= 400. Throws
 * PoleError when z is exactly a non-positive real integer.
 */
std::complex<double> complex_log_gamma(std::complex<double> z);

/**
 * Mittag-Leffler function E_a(z) = sum_{n>=0} z^n / Gamma(1 + a n).
 *
 * Supported for a in (0, 2]. Summation stops once two consecutive terms
 * fall below tol / 10; throws NoConvergence when max_terms is exhausted or
 * a term exceeds the double range (sums such as E_{1/2}(50) ~ exp(2500) are
 * not representable).
 */
double mittag_leffler(double a, double z, double tol = 1e-10, int max_terms = 400);

/**
 * Wright M function M_nu(z) = sum_{n>=0} (-z)^n / (n! Gamma(-nu n + 1 - nu)).
 *
 * Supported for nu in (0, 1), z >= 0. Terms whose Gamma argument lands on a
 * non-positive integer are exactly zero through reciprocal_gamma. Stops on
 * two consecutive terms below tol / 10 after a minimum of eight terms;
 * throws NoConvergence at the cap or when intermediate terms exceed the
 * double range (large z at nu close to 1).
 */
double wright_m(double nu, double z, double tol = 1e-10, int max_terms = 400);

}  // namespace fspd
