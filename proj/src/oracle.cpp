#include "fspd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fspd/green.hpp"
#include "fspd/quadrature.hpp"
#include "fspd/special.hpp"

namespace fspd {
namespace {

constexpr std::complex<double> kImag(0.0, 1.0);

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

void validate_oracle_inputs(const ModelParams& params, const MarketQuote& quote, double mu) {
    validate_model(params, true);
    validate_quote(quote);
    if (!(mu < 0.0) || !std::isfinite(mu)) {
        throw DomainError("mu", "must satisfy mu < 0");
    }
}

}  // namespace

double bs_closed_form(const MarketQuote& quote, double sigma) {
    validate_quote(quote);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma", "must satisfy sigma > 0");
    }
    const double tau = quote.maturity;
    const double vol = sigma * std::sqrt(tau);
    const double d1 = (log_moneyness(quote) + 0.5 * sigma * sigma * tau) / vol;
    const double d2 = d1 - vol;
    return quote.spot * std::exp(-quote.dividend * tau) * normal_cdf(d1) -
           quote.strike * std::exp(-quote.rate * tau) * normal_cdf(d2);
}

double price_by_convolution(const ModelParams& params, const MarketQuote& quote, double mu,
                            const SeriesControl& quad) {
    validate_oracle_inputs(params, quote, mu);
    validate_control(quad);
    const double tau = quote.maturity;
    const double a = -log_moneyness(quote) - mu * tau;
    const double discounted_strike = quote.strike * std::exp(-quote.rate * tau);

    const GreenEvaluator evaluator(params, mu);
    const auto integrand = [&](double y) {
        return (std::exp(y - a) - 1.0) * evaluator.max_asym(y, tau);
    };

    // The density is defined away from y == 0 only; shift any segment edge
    // that lands exactly there.
    const auto nudge = [](double edge) { return std::abs(edge) < 1e-12 ? edge + 1e-9 : edge; };

    const double offsets[] = {0.0, 0.3, 1.0, 2.5, 5.0, 9.0};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(offsets); ++i) {
        total += gauss16_panels(integrand, nudge(a + offsets[i]), nudge(a + offsets[i + 1]), 16);
    }

    // Right-tail extensions: the density decays super-exponentially, so the
    // payoff growth e^y loses; a handful of segments suffices.
    double lo = a + offsets[std::size(offsets) - 1];
    for (int count = 0;; ++count) {
        if (count >= quad.max_index) {
            throw NoConvergence("price_by_convolution: tail extensions exhausted");
        }
        const double contribution = gauss16_panels(integrand, nudge(lo), nudge(lo + 4.0), 16);
        total += contribution;
        lo += 4.0;
        if (std::abs(contribution) < 0.1 * quad.tol * std::max(1.0, std::abs(total))) {
            break;
        }
    }
    return discounted_strike * total;
}

double price_by_mb2(const ModelParams& params, const MarketQuote& quote, double mu,
                    const std::pair<ContourSpec, ContourSpec>& contours) {
    validate_oracle_inputs(params, quote, mu);
    const double c1 = contours.first.abscissa;
    const double c2 = contours.second.abscissa;
    if (!(c2 > 0.0) || !(c2 < 1.0)) {
        throw DomainError("contours.second.abscissa", "must satisfy 0 < abscissa < 1");
    }
    if (!(c2 - c1 > 1.0)) {
        throw DomainError("contours.first.abscissa", "must lie more than 1 below the second abscissa");
    }
    if (std::abs(c1 - std::round(c1)) < 0.1) {
        throw DomainError("contours.first.abscissa", "must be at least 0.1 away from integers");
    }
    if (!(params.gamma < params.alpha)) {
        throw DomainError("gamma", "must satisfy gamma < alpha for the two-line representation");
    }
    const double alpha = params.alpha;
    const double q = params.gamma / alpha;
    const double tau = quote.maturity;
    const double a = -log_moneyness(quote) - mu * tau;
    if (!(a > 0.0)) {
        throw DomainError("log_moneyness", "adjusted gap -log_moneyness - mu tau must be positive");
    }
    const double ln_a = std::log(a);
    const double ln_b = std::log(-mu) + params.gamma * std::log(tau);
    const double prefactor = quote.strike * std::exp(-quote.rate * tau) / alpha;

    // Inner line closed by left residue reduction: the decaying piece is a
    // Gamma tail sum; the ridge piece contributes the separate horseshoe
    // integral below.
    const auto inner_decay = [&](std::complex<double> t1) {
        std::complex<double> sum(0.0, 0.0);
        for (int k = 0; k < 120; ++k) {
            const std::complex<double> term =
                std::exp(complex_log_gamma(-1.0 - t1 - static_cast<double>(k)) + k * ln_a);
            sum += term;
            if (k > 2 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) {
                break;
            }
        }
        return sum;
    };

    const auto outer = [&](std::complex<double> t1) {
        return inner_decay(t1) * std::exp((1.0 + t1) * ln_a - (t1 / alpha) * ln_b -
                                          complex_log_gamma(1.0 - q * t1));
    };

    // Piece 1: vertical line Re t1 = c1, conjugate-symmetric so twice the
    // real part of the upper half suffices.
    const double rate = (M_PI / 2.0) * (1.0 - q);
    const double t_height = contours.first.half_length > 0.0 ? contours.first.half_length
                                                             : 38.0 / rate;
    const double f_near = std::abs(outer(std::complex<double>(c1, 0.1)));
    const double f_end = std::abs(outer(std::complex<double>(c1, t_height)));
    if (f_end > 1e-10 * std::max(f_near, 1e-280)) {
        throw ContourError("price_by_mb2: outer line truncated before its tail decays");
    }
    const int panels1 = std::max({16, static_cast<int>(t_height / 2.0), contours.first.nodes / 16});

    // Piece 2: ridge horseshoe around the negative axis. The A-powers cancel
    // exactly, leaving a pole comb 1/(e^{2 i pi t} - 1); legs at Im = +-1/2,
    // turning at c1. Truncation -X extends until the integrand dies.
    const auto ridge = [&](std::complex<double> t) {
        return std::exp(-(t / alpha) * ln_b - complex_log_gamma(1.0 - q * t)) /
               (std::exp(2.0 * kImag * M_PI * t) - 1.0);
    };
    const double eps = 0.5;
    double x_cut = 30.0;
    while (std::abs(ridge(std::complex<double>(-x_cut, eps))) > 1e-18 && x_cut < 200.0) {
        x_cut += 10.0;
    }
    if (std::abs(ridge(std::complex<double>(-x_cut, eps))) > 1e-18) {
        throw ContourError("price_by_mb2: ridge tail unresolved at truncation cap");
    }
    const int panels2 =
        std::max({24, static_cast<int>(c1 + x_cut), contours.second.nodes / 16});

    const auto evaluate = [&](int p1, int p2) {
        const std::complex<double> line = gauss16_panels(
            [&](double u) { return outer(std::complex<double>(c1, u)); }, 0.0, t_height, p1);
        const double piece1 = prefactor * 2.0 * line.real() / (2.0 * M_PI);

        // Lower leg traversed rightward (-X -> c1), upper leg leftward, cap
        // at Re = c1; the orientation is the one consistent with the band
        // identity piece1 + piece2 = series value.
        std::complex<double> total2 =
            gauss16_panels([&](double x) { return ridge(std::complex<double>(x, -eps)); }, -x_cut,
                           c1, p2) -
            gauss16_panels([&](double x) { return ridge(std::complex<double>(x, eps)); }, -x_cut,
                           c1, p2) +
            gauss16_panels([&](double v) { return ridge(std::complex<double>(c1, v)) * kImag; },
                           -eps, eps, 4);
        const std::complex<double> piece2 = prefactor * std::exp(-a) * total2;
        return std::make_pair(piece1, piece2);
    };

    const auto [coarse1, coarse2] = evaluate(panels1, panels2);
    const auto [fine1, fine2] = evaluate(2 * panels1, 2 * panels2);
    const double coarse = coarse1 + coarse2.real();
    const double price = fine1 + fine2.real();
    if (std::abs(price - coarse) > 1e-4 * std::max(1.0, std::abs(price))) {
        throw ContourError("price_by_mb2: doubling the node budget moved the value");
    }
    if (std::abs(fine2.imag()) > 1e-6 * std::abs(price)) {
        throw ContourError("price_by_mb2: imaginary residual above threshold");
    }
    return price;
}

}  // namespace fspd
