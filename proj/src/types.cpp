#include "fspd/types.hpp"

#include <cmath>

namespace fspd {

void validate_model(const ModelParams& params, bool for_pricing) {
    if (!(params.alpha > 1.0) || !(params.alpha <= 2.0) || !std::isfinite(params.alpha)) {
        throw DomainError("alpha", "must satisfy 1 < alpha <= 2");
    }
    if (!(params.gamma > 0.0) || !(params.gamma <= params.alpha) || !std::isfinite(params.gamma)) {
        throw DomainError("gamma", "must satisfy 0 < gamma <= alpha");
    }
    if (for_pricing && !(params.gamma > 1.0 - 1.0 / params.alpha)) {
        throw DomainError("gamma", "must satisfy gamma > 1 - 1/alpha for the series representation");
    }
    if (!(params.sigma > 0.0) || !std::isfinite(params.sigma)) {
        throw DomainError("sigma", "must satisfy sigma > 0");
    }
    const double fan = std::min(params.alpha, 2.0 - params.alpha);
    if (!(std::abs(params.theta) <= fan) || !std::isfinite(params.theta)) {
        throw DomainError("theta", "must satisfy |theta| <= min(alpha, 2 - alpha)");
    }
    // Tolerance absorbs the rounding difference between a decimal theta
    // literal and alpha - 2 computed in floating point.
    if (for_pricing && !(std::abs(params.theta - (params.alpha - 2.0)) <= 1e-12)) {
        throw DomainError("theta", "must equal alpha - 2 for pricing");
    }
}

void validate_quote(const MarketQuote& quote) {
    if (!(quote.spot > 0.0) || !std::isfinite(quote.spot)) {
        throw DomainError("spot", "must satisfy spot > 0");
    }
    if (!(quote.strike > 0.0) || !std::isfinite(quote.strike)) {
        throw DomainError("strike", "must satisfy strike > 0");
    }
    if (!std::isfinite(quote.rate)) {
        throw DomainError("rate", "must be finite");
    }
    if (!std::isfinite(quote.dividend)) {
        throw DomainError("dividend", "must be finite");
    }
    if (!(quote.maturity > 0.0) || !std::isfinite(quote.maturity)) {
        throw DomainError("maturity", "must satisfy maturity > 0");
    }
}

void validate_control(const SeriesControl& control) {
    if (!(control.tol > 0.0) || !std::isfinite(control.tol)) {
        throw DomainError("tol", "must satisfy tol > 0");
    }
    if (control.max_index < 2) {
        throw DomainError("max_index", "must satisfy max_index >= 2");
    }
}

double log_moneyness(const MarketQuote& quote) {
    validate_quote(quote);
    return std::log(quote.spot / quote.strike) +
           (quote.rate - quote.dividend) * quote.maturity;
}

}  // namespace fspd
