#include "fspd/risk_neutral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fspd/quadrature.hpp"
#include "fspd/special.hpp"

namespace fspd {
namespace {

constexpr std::complex<double> kImag(0.0, 1.0);

double require_mu1(const ModelParams& params) {
    if (!(params.gamma > 1.0 - 1.0 / params.alpha)) {
        throw DomainError("gamma", "must satisfy gamma > 1 - 1/alpha for the series representation");
    }
    return mu_stable(params.alpha, params.sigma);
}

}  // namespace

double mu_stable(double alpha, double sigma) {
    if (!(alpha > 1.0) || !(alpha <= 2.0) || !std::isfinite(alpha)) {
        throw DomainError("alpha", "must satisfy 1 < alpha <= 2");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma", "must satisfy sigma > 0");
    }
    return std::pow(sigma / std::sqrt(2.0), alpha) / std::cos(M_PI * alpha / 2.0);
}

MuResult mu_series(const ModelParams& params, double tol, int max_terms) {
    validate_model(params, false);
    if (!(tol > 0.0)) {
        throw DomainError("tol", "must satisfy tol > 0");
    }
    if (max_terms < 2) {
        throw DomainError("max_terms", "must satisfy max_terms >= 2");
    }
    const double mu1 = require_mu1(params);
    const double ln_abs_mu1 = std::log(std::abs(mu1));
    // mu1 < 0 throughout the domain, so (-1)^n mu1^n = |mu1|^n and every term
    // is positive; the sum is the drift factor exp(-mu) > 0.
    double sum = 0.0;
    double comp = 0.0;
    for (int n = 0; n < max_terms; ++n) {
        const double ln_term = log_gamma_signed(1.0 + params.alpha * n).log_abs -
                               log_gamma_signed(n + 1.0).log_abs -
                               log_gamma_signed(1.0 + params.gamma * params.alpha * n).log_abs +
                               n * ln_abs_mu1;
        const double term = std::exp(ln_term);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if (n > 4 && term < tol * std::abs(sum)) {
            const double total = sum + comp;
            if (!(total > 0.0)) {
                throw NonPositiveSum("mu_series: truncated drift-factor sum is not positive");
            }
            return MuResult{-std::log(total), MuRoute::series, n + 1};
        }
    }
    throw NoConvergence("mu_series: term cap reached before tolerance");
}

MuResult mu_mellin_barnes(const ModelParams& params, const ContourSpec& contour) {
    validate_model(params, false);
    const double c = contour.abscissa;
    if (!(c > 0.0) || !(c < 1.0)) {
        throw DomainError("abscissa", "must satisfy 0 < abscissa < 1");
    }
    const double mu1 = require_mu1(params);
    const double alpha = params.alpha;
    const double gamma = params.gamma;
    const double lnx = std::log(-mu1);
    const double eps = contour.half_length > 0.0 ? contour.half_length : 1.0;

    // Integrand of the horseshoe representation of the drift-factor sum. The
    // branch e^{+i pi (s-1)/alpha} pairs with the leg wrap; the legs at
    // Im s = +-eps stay clear of the integrand poles on the real axis.
    const auto f = [&](std::complex<double> s) {
        const std::complex<double> w = (s - 1.0) / alpha;
        const std::complex<double> lg = complex_log_gamma(s) +
                                        complex_log_gamma((1.0 - s) / alpha) -
                                        complex_log_gamma(gamma * s + 1.0 - gamma);
        return std::exp(lg + w * (lnx + kImag * M_PI)) / alpha;
    };

    // Extend the leg truncation until the integrand there is negligible.
    double X = std::max(20.0, c + 10.0);
    while (std::abs(f(std::complex<double>(X, eps))) > 1e-19 && X < 200.0) {
        X += 5.0;
    }
    if (std::abs(f(std::complex<double>(X, eps))) > 1e-19) {
        throw ContourError("mu_mellin_barnes: leg tail unresolved at truncation cap");
    }

    const int npanels = std::max({24, static_cast<int>(std::ceil(X - c)), contour.nodes / 16});
    const auto lower = gauss16_panels(
        [&](double u) { return f(std::complex<double>(u, -eps)); }, c, X, npanels);
    const auto upper = gauss16_panels(
        [&](double u) { return f(std::complex<double>(u, eps)); }, c, X, npanels);
    const auto cap = gauss16_panels(
        [&](double v) { return f(std::complex<double>(c, v)) * kImag; }, -eps, eps, 3);

    // Path: X - i eps -> c - i eps (reversed lower leg), cap upward, then
    // c + i eps -> X + i eps.
    const std::complex<double> total = (-lower + cap + upper) / (2.0 * kImag * M_PI);
    if (std::abs(total.imag()) > 1e-8 * std::max(1.0, std::abs(total.real()))) {
        throw ContourError("mu_mellin_barnes: imaginary residual above threshold");
    }
    if (!(total.real() > 0.0)) {
        throw NonPositiveSum("mu_mellin_barnes: drift-factor integral is not positive");
    }
    return MuResult{-std::log(total.real()), MuRoute::mellin_barnes, 16 * (2 * npanels + 3)};
}

MuResult mu_subordination(const ModelParams& params, int quad_nodes) {
    validate_model(params, false);
    if (!(params.gamma < 1.0)) {
        throw DomainError("gamma", "must satisfy gamma < 1 for the subordination route");
    }
    if (quad_nodes < 16) {
        throw DomainError("quad_nodes", "must satisfy quad_nodes >= 16");
    }
    const double nu = params.gamma;
    const double alpha = params.alpha;
    const double mu1 = mu_stable(alpha, params.sigma);
    const double am1 = std::abs(mu1);

    // Truncation point: balance the kernel tail M_nu(l) ~ exp(-c l^p)
    // against float64 cancellation inside the kernel series, whose largest
    // term has log magnitude tmax_ln(l) (Stirling stationary point).
    const double tol_abs = 2e-8;
    const double cnu = (1.0 - nu) * std::pow(nu, nu / (1.0 - nu));
    const double p = 1.0 / (1.0 - nu);
    const auto tail = [&](double L) { return std::exp(-(cnu * std::pow(L, p) - am1 * std::pow(L, alpha))); };
    const auto noise = [&](double L) {
        const double tmax_ln = (1.0 - nu) * std::exp((std::log(L) + nu * std::log(nu)) / (1.0 - nu));
        return 0.3 * L * 2.22e-16 * std::exp(std::min(600.0, tmax_ln + am1 * std::pow(L, alpha)));
    };
    double hi = 1.0;
    while (tail(hi) > 0.05 * tol_abs && hi < 1e3) {
        hi *= 1.25;
    }
    double L = hi;
    double best = tail(hi) + noise(hi);
    for (int i = 0; i < 60; ++i) {
        const double cand = 0.35 * hi + (hi - 0.35 * hi) * i / 59.0;
        const double err = tail(cand) + noise(cand);
        if (err < best) {
            best = err;
            L = cand;
        }
    }

    const int npanels = std::max(8, quad_nodes / 16);
    double sum = 0.0;
    double comp = 0.0;
    const double width = L / npanels;
    for (int pidx = 0; pidx < npanels; ++pidx) {
        const double lo = pidx * width;
        const double mid = lo + 0.5 * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < kGl16Nodes.size(); ++i) {
            for (const double sgn : {1.0, -1.0}) {
                const double xi = mid + sgn * half * kGl16Nodes[i];
                const double wi = half * kGl16Weights[i];
                const double term =
                    wi * wright_m(nu, xi, 1e-15, 2048) * std::exp(-std::pow(xi, alpha) * mu1);
                const double t = sum + term;
                if (std::abs(sum) >= std::abs(term)) {
                    comp += (sum - t) + term;
                } else {
                    comp += (term - t) + sum;
                }
                sum = t;
            }
        }
    }
    const double integral = sum + comp;
    if (!(integral > 0.0)) {
        throw NonPositiveSum("mu_subordination: drift-factor integral is not positive");
    }
    return MuResult{-std::log(integral), MuRoute::subordination, npanels * 16};
}

}  // namespace fspd
