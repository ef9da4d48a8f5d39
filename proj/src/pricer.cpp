#include "fspd/pricer.hpp"

#include <cmath>
#include <utility>

#include "fspd/risk_neutral.hpp"
#include "fspd/special.hpp"

namespace fspd {
namespace {

/// Signed-log pieces shared by every series variant.
struct SeriesGeometry {
    double ln_prefactor = 0.0;  // ln(K e^{-r tau} / alpha)
    double ln_abs_a = 0.0;      // ln|A|, A = -log_moneyness - mu tau
    int sign_a = 0;
    double ln_b = 0.0;  // ln B, B = -mu tau^gamma > 0
};

SeriesGeometry make_geometry(const ModelParams& params, const MarketQuote& quote, double mu) {
    SeriesGeometry geo;
    geo.ln_prefactor = std::log(quote.strike) - quote.rate * quote.maturity - std::log(params.alpha);
    const double a = -log_moneyness(quote) - mu * quote.maturity;
    geo.sign_a = a > 0.0 ? 1 : (a < 0.0 ? -1 : 0);
    geo.ln_abs_a = a == 0.0 ? 0.0 : std::log(std::abs(a));
    geo.ln_b = std::log(-mu) + params.gamma * std::log(quote.maturity);
    return geo;
}

/// General term: value at (n, m) of the double series. Exact zero when the
/// Gamma argument is a non-positive integer (0^0 counts as 1 for A == 0).
double series_term(int n, int m, double alpha, double gamma, const SeriesGeometry& geo) {
    const double rg = reciprocal_gamma(1.0 - gamma * (n - m) / alpha);
    if (rg == 0.0) {
        return 0.0;
    }
    if (geo.sign_a == 0 && n > 0) {
        return 0.0;
    }
    const double ln_mag = geo.ln_prefactor - log_gamma_signed(n + 1.0).log_abs +
                          (n > 0 ? n * geo.ln_abs_a : 0.0) + ((m - n) / alpha) * geo.ln_b +
                          std::log(std::abs(rg));
    int sign = (n % 2 == 0) ? 1 : -1;
    if (rg < 0.0) {
        sign = -sign;
    }
    if (geo.sign_a < 0 && n % 2 == 1) {
        sign = -sign;
    }
    return sign * std::exp(ln_mag);
}

/// Shell-summed evaluation shared by the general and specialized series.
/// term(n, m) supplies the value; shells are squares max(n, m) = N with
/// m >= 1, summed until the last shell contributes < tol.
template <typename TermFn>
PriceResult sum_shells(TermFn&& term, const SeriesControl& control) {
    validate_control(control);
    double sum = 0.0;
    double comp = 0.0;
    int terms_used = 0;
    const auto add = [&](double value) {
        if (value == 0.0) {
            return;
        }
        ++terms_used;
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value)) {
            comp += (sum - t) + value;
        } else {
            comp += (value - t) + sum;
        }
        sum = t;
    };
    for (int shell = 1; shell <= control.max_index; ++shell) {
        double shell_sum = 0.0;
        for (int n = 0; n <= shell; ++n) {
            const double v = term(n, shell);
            add(v);
            shell_sum += v;
        }
        for (int m = 1; m < shell; ++m) {
            const double v = term(shell, m);
            add(v);
            shell_sum += v;
        }
        if (shell >= 3 && std::abs(shell_sum) < control.tol) {
            const double price = sum + comp;
            if (price < -10.0 * control.tol) {
                throw NegativePrice("call price series converged to a negative value");
            }
            return PriceResult{price, terms_used, shell_sum, true};
        }
    }
    throw NoConvergence("call price series: shell cap reached before tolerance");
}

void validate_pricing_inputs(const ModelParams& params, const MarketQuote& quote, double mu) {
    validate_model(params, true);
    validate_quote(quote);
    if (!(mu < 0.0) || !std::isfinite(mu)) {
        throw DomainError("mu", "must satisfy mu < 0");
    }
}

}  // namespace

PriceResult call_price_series(const ModelParams& params, const MarketQuote& quote, double mu,
                              const SeriesControl& control) {
    validate_pricing_inputs(params, quote, mu);
    const SeriesGeometry geo = make_geometry(params, quote, mu);
    return sum_shells(
        [&](int n, int m) { return series_term(n, m, params.alpha, params.gamma, geo); }, control);
}

TermGrid term_grid(const ModelParams& params, const MarketQuote& quote, double mu, int n_max,
                   int m_max) {
    validate_pricing_inputs(params, quote, mu);
    if (n_max < 0) {
        throw DomainError("n_max", "must satisfy n_max >= 0");
    }
    if (m_max < 1) {
        throw DomainError("m_max", "must satisfy m_max >= 1");
    }
    const SeriesGeometry geo = make_geometry(params, quote, mu);
    TermGrid grid;
    grid.n_max = n_max;
    grid.m_max = m_max;
    grid.values.resize(static_cast<std::size_t>(n_max + 1) * m_max);
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 1; m <= m_max; ++m) {
            grid.values[static_cast<std::size_t>(n) * m_max + (m - 1)] =
                series_term(n, m, params.alpha, params.gamma, geo);
        }
    }
    return grid;
}

PriceResult call_price_special(SpecialCase special, const ModelParams& params,
                               const MarketQuote& quote, const SeriesControl& control) {
    validate_quote(quote);
    switch (special) {
        case SpecialCase::fmls: {
            if (params.gamma != 1.0) {
                throw DomainError("gamma", "must equal 1 for the fmls case");
            }
            validate_model(params, true);
            const double mu = mu_stable(params.alpha, params.sigma);
            const SeriesGeometry geo = make_geometry(params, quote, mu);
            const double alpha = params.alpha;
            // gamma == 1 collapses the Gamma argument to 1 - (n - m)/alpha.
            return sum_shells(
                [&](int n, int m) {
                    const double rg = reciprocal_gamma(1.0 - (n - m) / alpha);
                    if (rg == 0.0 || (geo.sign_a == 0 && n > 0)) {
                        return 0.0;
                    }
                    const double ln_mag = geo.ln_prefactor - log_gamma_signed(n + 1.0).log_abs +
                                          (n > 0 ? n * geo.ln_abs_a : 0.0) +
                                          ((m - n) / alpha) * geo.ln_b + std::log(std::abs(rg));
                    int sign = (n % 2 == 0) ? 1 : -1;
                    if (rg < 0.0) {
                        sign = -sign;
                    }
                    if (geo.sign_a < 0 && n % 2 == 1) {
                        sign = -sign;
                    }
                    return sign * std::exp(ln_mag);
                },
                control);
        }
        case SpecialCase::black_scholes_series: {
            if (params.alpha != 2.0) {
                throw DomainError("alpha", "must equal 2 for the black_scholes_series case");
            }
            if (params.gamma != 1.0) {
                throw DomainError("gamma", "must equal 1 for the black_scholes_series case");
            }
            validate_model(params, true);
            // mu = -sigma^2/2 exactly, so A = -log_moneyness + sigma^2 tau / 2
            // and B = sigma^2 tau / 2; both built from sigma directly.
            const double half_var = 0.5 * params.sigma * params.sigma * quote.maturity;
            const double a = -log_moneyness(quote) + half_var;
            const double ln_prefactor =
                std::log(quote.strike) - quote.rate * quote.maturity - std::log(2.0);
            const int sign_a = a > 0.0 ? 1 : (a < 0.0 ? -1 : 0);
            const double ln_abs_a = a == 0.0 ? 0.0 : std::log(std::abs(a));
            const double ln_b = std::log(half_var);
            return sum_shells(
                [&](int n, int m) {
                    const double rg = reciprocal_gamma(1.0 - (n - m) / 2.0);
                    if (rg == 0.0 || (sign_a == 0 && n > 0)) {
                        return 0.0;
                    }
                    const double ln_mag = ln_prefactor - log_gamma_signed(n + 1.0).log_abs +
                                          (n > 0 ? n * ln_abs_a : 0.0) + ((m - n) / 2.0) * ln_b +
                                          std::log(std::abs(rg));
                    int sign = (n % 2 == 0) ? 1 : -1;
                    if (rg < 0.0) {
                        sign = -sign;
                    }
                    if (sign_a < 0 && n % 2 == 1) {
                        sign = -sign;
                    }
                    return sign * std::exp(ln_mag);
                },
                control);
        }
        case SpecialCase::neural: {
            if (params.gamma != params.alpha) {
                throw DomainError("gamma", "must equal alpha for the neural case");
            }
            validate_model(params, true);
            const double mu = mu_series(params).mu;
            const SeriesGeometry geo = make_geometry(params, quote, mu);
            // gamma == alpha turns the Gamma factor into (m - n)! and the
            // lower triangle m < n vanishes identically.
            const double ln_c = std::log(-mu) / params.alpha + std::log(quote.maturity);
            return sum_shells(
                [&](int n, int m) {
                    if (m < n || (geo.sign_a == 0 && n > 0)) {
                        return 0.0;
                    }
                    const double ln_mag = geo.ln_prefactor - log_gamma_signed(n + 1.0).log_abs -
                                          log_gamma_signed(m - n + 1.0).log_abs +
                                          (n > 0 ? n * geo.ln_abs_a : 0.0) + (m - n) * ln_c;
                    int sign = (n % 2 == 0) ? 1 : -1;
                    if (geo.sign_a < 0 && n % 2 == 1) {
                        sign = -sign;
                    }
                    return sign * std::exp(ln_mag);
                },
                control);
        }
        case SpecialCase::time_fractional:
        default: {
            if (params.alpha != 2.0) {
                throw DomainError("alpha", "must equal 2 for the time_fractional case");
            }
            validate_model(params, true);
            const double mu = mu_series(params).mu;
            const SeriesGeometry geo = make_geometry(params, quote, mu);
            const double gamma = params.gamma;
            return sum_shells(
                [&](int n, int m) {
                    const double rg = reciprocal_gamma(1.0 - gamma * (n - m) / 2.0);
                    if (rg == 0.0 || (geo.sign_a == 0 && n > 0)) {
                        return 0.0;
                    }
                    const double ln_mag = geo.ln_prefactor - log_gamma_signed(n + 1.0).log_abs +
                                          (n > 0 ? n * geo.ln_abs_a : 0.0) + ((m - n) / 2.0) * geo.ln_b +
                                          std::log(std::abs(rg));
                    int sign = (n % 2 == 0) ? 1 : -1;
                    if (rg < 0.0) {
                        sign = -sign;
                    }
                    if (geo.sign_a < 0 && n % 2 == 1) {
                        sign = -sign;
                    }
                    return sign * std::exp(ln_mag);
                },
                control);
        }
    }
}

double atmf_leading_order(const ModelParams& params, const MarketQuote& quote, double mu) {
    (void)mu;  // accepted for signature symmetry; the leading order is mu-free
    validate_quote(quote);
    if (params.alpha != 2.0) {
        throw DomainError("alpha", "must equal 2 for the leading-order formula");
    }
    if (std::abs(log_moneyness(quote)) > 1e-12) {
        throw DomainError("log_moneyness", "must vanish at the money forward");
    }
    if (params.sigma == 0.0) {
        return 0.0;
    }
    validate_model(params, false);
    const double gamma = params.gamma;
    const double tau = quote.maturity;
    const double g_half = std::exp(log_gamma_signed(1.0 + gamma / 2.0).log_abs);
    const double g_two = std::exp(log_gamma_signed(1.0 + 2.0 * gamma).log_abs);
    return 0.5 * quote.spot * std::exp(-quote.dividend * tau) * (params.sigma / g_half) *
           std::sqrt(std::pow(tau, gamma) / g_two);
}

}  // namespace fspd
