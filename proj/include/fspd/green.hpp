/**
 * @file green.hpp
 * @brief Transition density (Green function) by Mellin-Barnes quadrature.
 *
 * The density of the log-price at maturity t scales as
 *   g(x, t) = t^{-Omega} g_red(x t^{-Omega}), Omega = gamma / alpha,
 * and its Mellin transform is an explicit Gamma ratio, so point values come
 * from a single vertical-line contour integral. Two kernels are used:
 *  - reduced: the maximally asymmetric (theta = alpha - 2) right tail,
 *    Gamma(1 - t) / Gamma(1 - (gamma/alpha) t), the form entering pricing;
 *  - general: the full Feller fan, a six-Gamma ratio valid for any
 *    admissible theta; the left tail follows from g^theta(-x) = g^{-theta}(x).
 * Both integrands decay like exp(-rate |Im t|) with a known rate, so the
 * truncation height and node budget are chosen from that rate and the
 * oscillation frequency |ln r|, then doubled until stable.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "fspd/contour.hpp"
#include "fspd/types.hpp"

namespace fspd {

/**
 * Density of the log-price increment at displacement x and maturity t, for
 * the full model (params.theta selects the asymmetry). x != 0 required.
 *
 * The drift correction is computed internally (series route). The result is
 * real by construction; a value below -1e-8 or an unstable doubling check
 * raises ContourError.
 */
double green_mb(double x, double t, const ModelParams& params, const ContourSpec& contour = {});

/**
 * Density at maximal negative asymmetry theta = alpha - 2 (the pricing
 * kernel), with the drift correction supplied by the caller. Requires
 * params.theta == alpha - 2.
 */
double green_max_asym(double y, double tau, const ModelParams& params, double mu,
                      const ContourSpec& contour = {});

/**
 * Reusable density evaluator. The contour tables (Gamma-ratio values on the
 * quadrature nodes) depend only on the model orders, the asymmetry kind and
 * the node tier, not on (x, t), so batch callers such as the convolution
 * pricer amortize all log-Gamma work across evaluations. Methods are
 * thread-safe; the table cache takes an internal lock.
 */
class GreenEvaluator {
public:
    /// mu is the drift correction for params (callers typically pass the
    /// series-route value); contour.abscissa must lie in (0, 1).
    GreenEvaluator(const ModelParams& params, double mu, const ContourSpec& contour = {});

    /// Density with params.theta asymmetry; x < 0 through reflection.
    double density(double x, double t) const;

    /// Density of the pricing kernel (theta pinned to alpha - 2); y < 0
    /// through reflection. Does not require params.theta == alpha - 2.
    double max_asym(double y, double tau) const;

private:
    enum class Kind : std::uint8_t { reduced, general_model, general_model_refl, general_max_refl };

    struct Table {
        std::vector<std::complex<double>> log_gamma_part;  // Gamma-ratio logs per node
        std::vector<double> imag_part;                     // Im t per node
        std::vector<double> weight;
        double height = 0.0;  // truncation T the table was built for
    };

    double decay_rate(Kind kind) const;
    const Table& table_for(Kind kind, int npanels) const;
    double integrate(Kind kind, int npanels, double ln_ratio) const;
    double evaluate(Kind kind, double x_abs, double t) const;

    ModelParams params_;
    double mu_;
    ContourSpec contour_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, Table> cache_;  // key = npanels * 8 + kind
};

}  // namespace fspd
