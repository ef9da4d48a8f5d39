/**
 * @file quadrature.hpp
 * @brief Panel-composite 16-node Gauss-Legendre integration.
 *
 * Every quadrature in the library reduces to smooth integrands on finite
 * panels, where fixed-order Gauss-Legendre converges geometrically in the
 * panel count. Node count 16 balances per-panel cost against the panel
 * subdivision used by the adaptive callers.
 */

#pragma once

#include <array>
#include <utility>

namespace fspd {

/// Abscissae of the 16-node Gauss-Legendre rule on [-1, 1] (positive half;
/// the rule is symmetric).
inline constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374402,
    0.2816035507792589132,
    0.4580167776572273863,
    0.6178762444026437484,
    0.7554044083550030339,
    0.8656312023878317439,
    0.9445750230732325761,
    0.9894009349916499326,
};

/// Weights paired with kGl16Nodes.
inline constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550684963,
    0.1826034150449235889,
    0.1691565193950025382,
    0.1495959888165767320,
    0.1246289712555338720,
    0.0951585116824927848,
    0.0622535239386478929,
    0.0271524594117540949,
};

/// 16-node Gauss-Legendre estimate of the integral of f over [lo, hi].
/// The return type follows the integrand (double or std::complex<double>).
template <typename F>
auto gauss16(F&& f, double lo, double hi) {
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    auto acc = kGl16Weights[0] * (f(mid + half * kGl16Nodes[0]) + f(mid - half * kGl16Nodes[0]));
    for (std::size_t i = 1; i < kGl16Nodes.size(); ++i) {
        acc += kGl16Weights[i] * (f(mid + half * kGl16Nodes[i]) + f(mid - half * kGl16Nodes[i]));
    }
    return half * acc;
}

/// Composite rule: [lo, hi] split into npanels equal panels, gauss16 on each.
template <typename F>
auto gauss16_panels(F&& f, double lo, double hi, int npanels) {
    const double width = (hi - lo) / npanels;
    auto acc = gauss16(f, lo, lo + width);
    for (int p = 1; p < npanels; ++p) {
        acc += gauss16(f, lo + p * width, lo + (p + 1) * width);
    }
    return acc;
}

}  // namespace fspd
