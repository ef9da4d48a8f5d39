/**
 * @file test_green.cpp
 * @brief Transition density checks: fixed references, the diffusion limit,
 *        reflection, self-similar scaling, and integral identities.
 */

#include <cmath>

#include "doctest.h"
#include "fspd/errors.hpp"
#include "fspd/green.hpp"
#include "fspd/quadrature.hpp"
#include "fspd/risk_neutral.hpp"
#include "fspd/types.hpp"

namespace {

fspd::ModelParams pinned(double alpha, double gamma, double sigma) {
    fspd::ModelParams p;
    p.alpha = alpha;
    p.gamma = gamma;
    p.sigma = sigma;
    p.theta = alpha - 2.0;
    return p;
}

/// Total mass of the maximally asymmetric density over the real line.
double density_mass(const fspd::GreenEvaluator& green) {
    const double cuts[] = {1e-7, 0.03, 0.1, 0.3, 1.0, 3.0,
                           10.0, 30.0, 100.0, 500.0};
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
        mass += fspd::gauss16_panels(
            [&green](double y) { return green.max_asym(y, 1.0); },
            cuts[i], cuts[i + 1], 12);
        mass += fspd::gauss16_panels(
            [&green](double y) { return green.max_asym(-y, 1.0); },
            cuts[i], cuts[i + 1], 12);
    }
    return mass;
}

}  // namespace

TEST_CASE("maximally asymmetric density at fixed points") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;

    CHECK(fspd::green_max_asym(0.3, 1.0, p, mu) ==
          doctest::Approx(0.9116856226098991).epsilon(1e-8));
    CHECK(fspd::green_max_asym(1.0, 1.0, p, mu) ==
          doctest::Approx(4.769274770915773e-05).epsilon(1e-8));
}

TEST_CASE("general density at fixed points and under reflection") {
    fspd::ModelParams p = pinned(1.8, 0.9, 0.2);
    p.theta = 0.1;
    CHECK(fspd::green_mb(0.7, 1.0, p) ==
          doctest::Approx(0.04933966002764909).epsilon(1e-8));
    CHECK(fspd::green_mb(-0.7, 1.0, p) ==
          doctest::Approx(0.03071647625721746).epsilon(1e-8));

    // Mirroring the asymmetry mirrors the argument, bit for bit: both sides
    // reduce to the same kernel tables.
    fspd::ModelParams q = p;
    q.theta = -0.1;
    CHECK(fspd::green_mb(-0.7, 1.0, p) == fspd::green_mb(0.7, 1.0, q));
    CHECK(fspd::green_mb(-1.3, 1.0, p) == fspd::green_mb(1.3, 1.0, q));
}

TEST_CASE("diffusion limit reproduces the heat kernel") {
    const fspd::ModelParams p = pinned(2.0, 1.0, 0.2);
    const double mu = fspd::mu_series(p).mu;  // -sigma^2 / 2
    const double diffusivity = -mu;
    const auto heat = [&](double x, double t) {
        return std::exp(-x * x / (4.0 * diffusivity * t)) /
               std::sqrt(4.0 * M_PI * diffusivity * t);
    };

    fspd::GreenEvaluator green(p, mu);
    CHECK(green.max_asym(0.5, 1.0) ==
          doctest::Approx(heat(0.5, 1.0)).epsilon(1e-6));
    CHECK(green.density(0.5, 1.0) ==
          doctest::Approx(heat(0.5, 1.0)).epsilon(1e-6));
    CHECK(green.max_asym(-0.25, 0.5) ==
          doctest::Approx(heat(-0.25, 0.5)).epsilon(1e-6));
}

TEST_CASE("pinned asymmetry routes agree") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator green(p, mu);
    // The reduced two-Gamma kernel and the general six-Gamma kernel are two
    // contour representations of the same function.
    for (double y : {0.2, 0.5, -0.4, -1.0}) {
        const double a = green.max_asym(y, 1.0);
        const double b = green.density(y, 1.0);
        CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("density integrates to one") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator green(p, mu);
    CHECK(density_mass(green) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("memoryless clock has unit exponential moment of the spot") {
    // For gamma = 1 the exponential moment equals exp(-mu1), the martingale
    // identity behind the drift factor.
    const fspd::ModelParams p = pinned(1.7, 1.0, 0.2);
    const double mu1 = fspd::mu_stable(1.7, 0.2);
    fspd::GreenEvaluator green(p, mu1);

    const auto integrand = [&green](double y) {
        return std::exp(y) * green.max_asym(y, 1.0);
    };
    const double neg_cuts[] = {-60.0, -30.0, -10.0, -3.0, -1.0, -1e-7};
    const double pos_cuts[] = {1e-7, 0.5, 1.0, 2.0, 4.0, 8.0};
    double moment = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(neg_cuts); ++i) {
        moment += fspd::gauss16_panels(integrand, neg_cuts[i],
                                       neg_cuts[i + 1], 14);
    }
    for (std::size_t i = 0; i + 1 < std::size(pos_cuts); ++i) {
        moment += fspd::gauss16_panels(integrand, pos_cuts[i],
                                       pos_cuts[i + 1], 14);
    }
    CHECK(moment == doctest::Approx(std::exp(-mu1)).epsilon(1e-5));
}

TEST_CASE("self similar scaling in time") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator green(p, mu);
    const double omega = p.gamma / p.alpha;

    const double u = 0.5;
    double lo = 1e300;
    double hi = -1e300;
    for (double t : {0.5, 1.0, 2.0}) {
        const double scaled =
            std::pow(t, omega) * green.max_asym(u * std::pow(t, omega), t);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    CHECK(hi - lo <= 1e-6);
}

TEST_CASE("right tail of the discounted payoff kernel decays") {
    // exp(y) g(y) must fall off superexponentially; the pricing integral
    // relies on that to truncate. Beyond y of roughly 2 the density sits
    // under the contour quadrature noise floor, so the probe stays where
    // the signal dominates.
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator green(p, mu);
    double first = 0.0;
    double prev = 1e300;
    for (double y : {0.5, 0.75, 1.0, 1.25, 1.5}) {
        const double v = std::exp(y) * green.max_asym(y, 1.0);
        CHECK(v < prev);
        CHECK(v > 0.0);
        if (first == 0.0) {
            first = v;
        }
        prev = v;
    }
    // One unit of log-price wipes out more than eight orders of magnitude.
    CHECK(prev < 1e-8 * first);
}

TEST_CASE("green evaluator rejects bad inputs") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator green(p, mu);

    CHECK_THROWS_AS(green.density(0.0, 1.0), fspd::DomainError);
    CHECK_THROWS_AS(green.density(0.5, 0.0), fspd::DomainError);
    CHECK_THROWS_AS(green.max_asym(0.5, -1.0), fspd::DomainError);

    // The drift factor must be negative.
    CHECK_THROWS_AS(fspd::GreenEvaluator(p, 0.01), fspd::DomainError);

    // Contour spec limits: abscissa inside (0, 1), node budget at least 64.
    fspd::ContourSpec spec;
    spec.abscissa = 1.2;
    CHECK_THROWS_AS(fspd::GreenEvaluator(p, mu, spec), fspd::DomainError);
    spec = fspd::ContourSpec{};
    spec.nodes = 32;
    CHECK_THROWS_AS(fspd::GreenEvaluator(p, mu, spec), fspd::DomainError);

    // The maximally asymmetric density requires the pinned asymmetry.
    fspd::ModelParams loose = p;
    loose.theta = -0.1;
    CHECK_THROWS_AS(fspd::green_max_asym(0.3, 1.0, loose, mu),
                    fspd::DomainError);
}

TEST_CASE("a hand-forced short contour is rejected, not silently used") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::ContourSpec spec;
    spec.half_length = 3.0;  // integrand still order 0.1 at the endpoint
    fspd::GreenEvaluator green(p, mu, spec);
    CHECK_THROWS_AS(green.max_asym(0.3, 1.0), fspd::ContourError);
}

TEST_CASE("evaluation is deterministic") {
    const fspd::ModelParams p = pinned(1.7, 0.9, 0.2);
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator a(p, mu);
    fspd::GreenEvaluator b(p, mu);
    for (double y : {0.3, 1.0, -0.7, 2.5}) {
        CHECK(a.max_asym(y, 1.0) == b.max_asym(y, 1.0));
        CHECK(a.max_asym(y, 1.0) == a.max_asym(y, 1.0));
    }
}
