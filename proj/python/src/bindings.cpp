/**
 * @file bindings.cpp
 * @brief Python bindings for the pricing library.
 *
 * Exposes the parameter structs, every drift-factor route, the series
 * pricer with its term grid, the density evaluator, and the independent
 * oracle pricers. Library exceptions map onto Python exception types of
 * the same name.
 */

#include <complex>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fspd/errors.hpp"
#include "fspd/green.hpp"
#include "fspd/oracle.hpp"
#include "fspd/pricer.hpp"
#include "fspd/risk_neutral.hpp"
#include "fspd/special.hpp"
#include "fspd/types.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_fspd, m) {
    m.doc() = "European call pricing under the space-time fractional "
              "diffusion model";

    // Exceptions, base first so subtype catches work from Python.
    static py::exception<fspd::Error> base_exc(m, "Error");
    static py::exception<fspd::DomainError> domain_exc(m, "DomainError",
                                                       base_exc.ptr());
    static py::exception<fspd::PoleError> pole_exc(m, "PoleError",
                                                   base_exc.ptr());
    static py::exception<fspd::NoConvergence> noconv_exc(m, "NoConvergence",
                                                         base_exc.ptr());
    static py::exception<fspd::ContourError> contour_exc(m, "ContourError",
                                                         base_exc.ptr());
    static py::exception<fspd::NonPositiveSum> nonpos_exc(
        m, "NonPositiveSum", base_exc.ptr());
    static py::exception<fspd::NegativePrice> negprice_exc(
        m, "NegativePrice", base_exc.ptr());
    static py::exception<fspd::IoError> io_exc(m, "IoError", base_exc.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const fspd::DomainError& e) {
            PyErr_SetString(domain_exc.ptr(), e.what());
        } catch (const fspd::PoleError& e) {
            PyErr_SetString(pole_exc.ptr(), e.what());
        } catch (const fspd::NoConvergence& e) {
            PyErr_SetString(noconv_exc.ptr(), e.what());
        } catch (const fspd::ContourError& e) {
            PyErr_SetString(contour_exc.ptr(), e.what());
        } catch (const fspd::NonPositiveSum& e) {
            PyErr_SetString(nonpos_exc.ptr(), e.what());
        } catch (const fspd::NegativePrice& e) {
            PyErr_SetString(negprice_exc.ptr(), e.what());
        } catch (const fspd::IoError& e) {
            PyErr_SetString(io_exc.ptr(), e.what());
        } catch (const fspd::Error& e) {
            PyErr_SetString(base_exc.ptr(), e.what());
        }
    });

    // Parameter structs.
    py::class_<fspd::ModelParams>(m, "ModelParams")
        .def(py::init([](double alpha, double gamma, double sigma,
                         double theta) {
                 fspd::ModelParams p;
                 p.alpha = alpha;
                 p.gamma = gamma;
                 p.sigma = sigma;
                 p.theta = theta;
                 return p;
             }),
             py::arg("alpha") = 1.7, py::arg("gamma") = 0.9,
             py::arg("sigma") = 0.2, py::arg("theta") = -0.3)
        .def_readwrite("alpha", &fspd::ModelParams::alpha)
        .def_readwrite("gamma", &fspd::ModelParams::gamma)
        .def_readwrite("sigma", &fspd::ModelParams::sigma)
        .def_readwrite("theta", &fspd::ModelParams::theta);

    py::class_<fspd::MarketQuote>(m, "MarketQuote")
        .def(py::init([](double spot, double strike, double rate,
                         double dividend, double maturity) {
                 fspd::MarketQuote q;
                 q.spot = spot;
                 q.strike = strike;
                 q.rate = rate;
                 q.dividend = dividend;
                 q.maturity = maturity;
                 return q;
             }),
             py::arg("spot") = 100.0, py::arg("strike") = 100.0,
             py::arg("rate") = 0.0, py::arg("dividend") = 0.0,
             py::arg("maturity") = 1.0)
        .def_readwrite("spot", &fspd::MarketQuote::spot)
        .def_readwrite("strike", &fspd::MarketQuote::strike)
        .def_readwrite("rate", &fspd::MarketQuote::rate)
        .def_readwrite("dividend", &fspd::MarketQuote::dividend)
        .def_readwrite("maturity", &fspd::MarketQuote::maturity);

    py::class_<fspd::SeriesControl>(m, "SeriesControl")
        .def(py::init([](double tol, int max_index) {
                 fspd::SeriesControl c;
                 c.tol = tol;
                 c.max_index = max_index;
                 return c;
             }),
             py::arg("tol") = 1e-6, py::arg("max_index") = 64)
        .def_readwrite("tol", &fspd::SeriesControl::tol)
        .def_readwrite("max_index", &fspd::SeriesControl::max_index);

    py::class_<fspd::ContourSpec>(m, "ContourSpec")
        .def(py::init([](double abscissa, double half_length, int nodes) {
                 fspd::ContourSpec s;
                 s.abscissa = abscissa;
                 s.half_length = half_length;
                 s.nodes = nodes;
                 return s;
             }),
             py::arg("abscissa") = 0.5, py::arg("half_length") = 0.0,
             py::arg("nodes") = 64)
        .def_readwrite("abscissa", &fspd::ContourSpec::abscissa)
        .def_readwrite("half_length", &fspd::ContourSpec::half_length)
        .def_readwrite("nodes", &fspd::ContourSpec::nodes);

    py::class_<fspd::PriceResult>(m, "PriceResult")
        .def_readonly("price", &fspd::PriceResult::price)
        .def_readonly("terms_used", &fspd::PriceResult::terms_used)
        .def_readonly("last_increment", &fspd::PriceResult::last_increment)
        .def_readonly("converged", &fspd::PriceResult::converged);

    py::enum_<fspd::MuRoute>(m, "MuRoute")
        .value("closed_form", fspd::MuRoute::closed_form)
        .value("series", fspd::MuRoute::series)
        .value("mellin_barnes", fspd::MuRoute::mellin_barnes)
        .value("subordination", fspd::MuRoute::subordination);

    py::class_<fspd::MuResult>(m, "MuResult")
        .def_readonly("mu", &fspd::MuResult::mu)
        .def_readonly("route", &fspd::MuResult::route)
        .def_readonly("terms_or_nodes", &fspd::MuResult::terms_or_nodes);

    py::enum_<fspd::SpecialCase>(m, "SpecialCase")
        .value("fmls", fspd::SpecialCase::fmls)
        .value("black_scholes_series", fspd::SpecialCase::black_scholes_series)
        .value("neural", fspd::SpecialCase::neural)
        .value("time_fractional", fspd::SpecialCase::time_fractional);

    py::class_<fspd::TermGrid>(m, "TermGrid")
        .def_readonly("n_max", &fspd::TermGrid::n_max)
        .def_readonly("m_max", &fspd::TermGrid::m_max)
        .def("term",
             [](const fspd::TermGrid& g, int n, int m) { return g(n, m); },
             py::arg("n"), py::arg("m"),
             "Value of the (n, m) series term, m >= 1");

    py::class_<fspd::SignedLog>(m, "SignedLog")
        .def_readonly("log_abs", &fspd::SignedLog::log_abs)
        .def_readonly("sign", &fspd::SignedLog::sign);

    // Validation and quote helpers.
    m.def("validate_model", &fspd::validate_model, py::arg("params"),
          py::arg("for_pricing") = false);
    m.def("validate_quote", &fspd::validate_quote, py::arg("quote"));
    m.def("log_moneyness", &fspd::log_moneyness, py::arg("quote"));

    // Special functions.
    m.def("log_gamma_signed", &fspd::log_gamma_signed, py::arg("x"));
    m.def("reciprocal_gamma", &fspd::reciprocal_gamma, py::arg("x"));
    m.def("complex_log_gamma", &fspd::complex_log_gamma, py::arg("z"));
    m.def("mittag_leffler", &fspd::mittag_leffler, py::arg("a"), py::arg("z"),
          py::arg("tol") = 1e-10, py::arg("max_terms") = 400);
    m.def("wright_m", &fspd::wright_m, py::arg("nu"), py::arg("z"),
          py::arg("tol") = 1e-10, py::arg("max_terms") = 400);

    // Drift factor routes.
    m.def("mu_stable", &fspd::mu_stable, py::arg("alpha"), py::arg("sigma"));
    m.def("mu_series", &fspd::mu_series, py::arg("params"),
          py::arg("tol") = 1e-12, py::arg("max_terms") = 200);
    m.def("mu_mellin_barnes", &fspd::mu_mellin_barnes, py::arg("params"),
          py::arg("contour") = fspd::ContourSpec{});
    m.def("mu_subordination", &fspd::mu_subordination, py::arg("params"),
          py::arg("quad_nodes") = 384);

    // Pricer.
    m.def("call_price_series", &fspd::call_price_series, py::arg("params"),
          py::arg("quote"), py::arg("mu"),
          py::arg("control") = fspd::SeriesControl{});
    m.def("term_grid", &fspd::term_grid, py::arg("params"), py::arg("quote"),
          py::arg("mu"), py::arg("n_max"), py::arg("m_max"));
    m.def("call_price_special", &fspd::call_price_special, py::arg("special"),
          py::arg("params"), py::arg("quote"),
          py::arg("control") = fspd::SeriesControl{});
    m.def("atmf_leading_order", &fspd::atmf_leading_order, py::arg("params"),
          py::arg("quote"), py::arg("mu"));

    // Transition density.
    py::class_<fspd::GreenEvaluator>(m, "GreenEvaluator")
        .def(py::init<const fspd::ModelParams&, double,
                      const fspd::ContourSpec&>(),
             py::arg("params"), py::arg("mu"),
             py::arg("contour") = fspd::ContourSpec{})
        .def("density", &fspd::GreenEvaluator::density, py::arg("x"),
             py::arg("t"))
        .def("max_asym", &fspd::GreenEvaluator::max_asym, py::arg("y"),
             py::arg("tau"));
    m.def("green_mb", &fspd::green_mb, py::arg("x"), py::arg("t"),
          py::arg("params"), py::arg("contour") = fspd::ContourSpec{});
    m.def("green_max_asym", &fspd::green_max_asym, py::arg("y"),
          py::arg("tau"), py::arg("params"), py::arg("mu"),
          py::arg("contour") = fspd::ContourSpec{});

    // Oracles.
    m.def("bs_closed_form", &fspd::bs_closed_form, py::arg("quote"),
          py::arg("sigma"));
    m.def("price_by_convolution", &fspd::price_by_convolution,
          py::arg("params"), py::arg("quote"), py::arg("mu"),
          py::arg("quad") = fspd::SeriesControl{});
    m.def("price_by_mb2", &fspd::price_by_mb2, py::arg("params"),
          py::arg("quote"), py::arg("mu"),
          py::arg("contours") = std::pair<fspd::ContourSpec, fspd::ContourSpec>{
              {-1.6, 0.0, 64}, {0.4, 0.0, 64}});
}
