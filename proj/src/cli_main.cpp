/**
 * @file cli_main.cpp
 * @brief Command-line front end: single prices, term tables, batch CSV
 *        pricing, drift factors, density samples, and strike sweeps.
 *
 * Exit codes: 0 success, 1 usage, 2 domain, 3 non-convergence, 4 I/O.
 * Every flag can also be supplied through an FSPD_ environment variable;
 * an explicit flag wins over the environment.
 */

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"

#include "fspd/errors.hpp"
#include "fspd/green.hpp"
#include "fspd/keyed_cache.hpp"
#include "fspd/oracle.hpp"
#include "fspd/pricer.hpp"
#include "fspd/risk_neutral.hpp"
#include "fspd/types.hpp"

namespace {

/// Machine-readable numeric rendering: 12 significant digits.
std::string num12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Human-readable numeric rendering: 3 decimals.
std::string num3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

/// Model flags shared by every subcommand. theta defaults to alpha - 2
/// (the pricing pin) unless given explicitly.
struct ModelFlags {
    double alpha = 1.7;
    double gamma = 0.9;
    double sigma = 0.2;
    double theta = 0.0;
    CLI::Option* theta_opt = nullptr;

    fspd::ModelParams resolve() const {
        fspd::ModelParams p;
        p.alpha = alpha;
        p.gamma = gamma;
        p.sigma = sigma;
        p.theta = (theta_opt != nullptr && theta_opt->count() > 0)
                      ? theta
                      : alpha - 2.0;
        return p;
    }
};

/// Quote flags shared by the pricing subcommands. Defaults reproduce the
/// reference table's market snapshot.
struct QuoteFlags {
    double spot = 3800.0;
    double strike = 4000.0;
    double rate = 0.01;
    double dividend = 0.0;
    double maturity = 1.0;

    fspd::MarketQuote resolve() const {
        fspd::MarketQuote q;
        q.spot = spot;
        q.strike = strike;
        q.rate = rate;
        q.dividend = dividend;
        q.maturity = maturity;
        return q;
    }
};

struct SeriesFlags {
    double tol = 1e-6;
    int max_index = 64;

    fspd::SeriesControl resolve() const {
        fspd::SeriesControl c;
        c.tol = tol;
        c.max_index = max_index;
        return c;
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--alpha", mf.alpha, "Stability order, 1 < alpha <= 2")
        ->envname("FSPD_ALPHA");
    cmd->add_option("--gamma", mf.gamma, "Memory order, 0 < gamma <= alpha")
        ->envname("FSPD_GAMMA");
    cmd->add_option("--sigma", mf.sigma, "Volatility, sigma > 0")
        ->envname("FSPD_SIGMA");
    mf.theta_opt =
        cmd->add_option("--theta", mf.theta,
                        "Asymmetry (default: alpha - 2, the pricing pin)")
            ->envname("FSPD_THETA");
}

void add_quote_flags(CLI::App* cmd, QuoteFlags& qf) {
    cmd->add_option("--spot", qf.spot, "Spot price")->envname("FSPD_SPOT");
    cmd->add_option("--strike", qf.strike, "Strike price")
        ->envname("FSPD_STRIKE");
    cmd->add_option("--rate", qf.rate, "Risk-free rate")->envname("FSPD_RATE");
    cmd->add_option("--dividend", qf.dividend, "Dividend yield")
        ->envname("FSPD_DIVIDEND");
    cmd->add_option("--maturity", qf.maturity, "Time to maturity in years")
        ->envname("FSPD_MATURITY");
}

void add_series_flags(CLI::App* cmd, SeriesFlags& sf) {
    cmd->add_option("--tol", sf.tol, "Series stopping tolerance")
        ->envname("FSPD_TOL");
    cmd->add_option("--max-index", sf.max_index, "Series shell cap")
        ->envname("FSPD_MAX_INDEX");
}

/// Sink that writes to a file when a path is given, stdout otherwise.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw fspd::IoError("cannot open output file: " + path);
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string json_params(const fspd::ModelParams& p, const fspd::MarketQuote& q) {
    std::ostringstream os;
    os << "{\"alpha\":" << num12(p.alpha) << ",\"gamma\":" << num12(p.gamma)
       << ",\"sigma\":" << num12(p.sigma) << ",\"theta\":" << num12(p.theta)
       << ",\"spot\":" << num12(q.spot) << ",\"strike\":" << num12(q.strike)
       << ",\"rate\":" << num12(q.rate) << ",\"dividend\":" << num12(q.dividend)
       << ",\"maturity\":" << num12(q.maturity) << "}";
    return os.str();
}

int cmd_price(const ModelFlags& mf, const QuoteFlags& qf, const SeriesFlags& sf,
              const std::string& format) {
    const fspd::ModelParams p = mf.resolve();
    const fspd::MarketQuote q = qf.resolve();
    const double mu = fspd::mu_series(p).mu;
    const fspd::PriceResult r = fspd::call_price_series(p, q, mu, sf.resolve());
    if (format == "json") {
        std::cout << "{\"price\":" << num12(r.price) << ",\"mu\":" << num12(mu)
                  << ",\"terms\":" << r.terms_used << ",\"converged\":"
                  << (r.converged ? "true" : "false")
                  << ",\"params\":" << json_params(p, q) << "}\n";
    } else {
        std::cout << "price = " << num3(r.price) << "\n"
                  << "mu = " << num3(mu) << "\n"
                  << "terms = " << r.terms_used << "\n"
                  << "converged = " << (r.converged ? "true" : "false") << "\n";
    }
    return r.converged ? 0 : 3;
}

int cmd_table(const ModelFlags& mf, const QuoteFlags& qf, int max_n, int max_m,
              const std::string& format, const std::string& output) {
    const fspd::ModelParams p = mf.resolve();
    const fspd::MarketQuote q = qf.resolve();
    const double mu = fspd::mu_series(p).mu;
    const fspd::TermGrid grid = fspd::term_grid(p, q, mu, max_n, max_m);

    std::vector<double> cumulative(static_cast<std::size_t>(max_m), 0.0);
    double running = 0.0;
    for (int m = 1; m <= max_m; ++m) {
        for (int n = 0; n <= max_n; ++n) {
            running += grid(n, m);
        }
        cumulative[static_cast<std::size_t>(m - 1)] = running;
    }

    OutputSink sink(output);
    std::ostream& os = sink.stream();
    if (format == "csv") {
        os << "n,m,term\n";
        for (int n = 0; n <= max_n; ++n) {
            for (int m = 1; m <= max_m; ++m) {
                os << n << "," << m << "," << num12(grid(n, m)) << "\n";
            }
        }
        // Cumulative row: literal label in the n column, one line per m.
        for (int m = 1; m <= max_m; ++m) {
            os << "call," << m << ","
               << num12(cumulative[static_cast<std::size_t>(m - 1)]) << "\n";
        }
    } else {
        char buf[64];
        os << "n\\m ";
        for (int m = 1; m <= max_m; ++m) {
            std::snprintf(buf, sizeof(buf), "%12d", m);
            os << buf;
        }
        os << "\n";
        for (int n = 0; n <= max_n; ++n) {
            std::snprintf(buf, sizeof(buf), "%-4d", n);
            os << buf;
            for (int m = 1; m <= max_m; ++m) {
                std::snprintf(buf, sizeof(buf), "%12.3f", grid(n, m));
                os << buf;
            }
            os << "\n";
        }
        os << "Call";
        for (int m = 1; m <= max_m; ++m) {
            std::snprintf(buf, sizeof(buf), "%12.3f",
                          cumulative[static_cast<std::size_t>(m - 1)]);
            os << buf;
        }
        os << "\n";
    }
    return 0;
}

int cmd_mu(const ModelFlags& mf, const std::string& route,
           const std::string& format) {
    const fspd::ModelParams p = mf.resolve();
    fspd::MuResult r;
    if (route == "series") {
        r = fspd::mu_series(p);
    } else if (route == "mb") {
        r = fspd::mu_mellin_barnes(p);
    } else {
        r = fspd::mu_subordination(p);
    }
    if (format == "json") {
        std::cout << "{\"mu\":" << num12(r.mu) << ",\"route\":\"" << route
                  << "\",\"terms\":" << r.terms_or_nodes << "}\n";
    } else {
        std::cout << "mu = " << num3(r.mu) << "\n"
                  << "route = " << route << "\n"
                  << "terms = " << r.terms_or_nodes << "\n";
    }
    return 0;
}

int cmd_green(const ModelFlags& mf, double time, double x_min, double x_max,
              int points, const std::string& output) {
    const fspd::ModelParams p = mf.resolve();
    const double mu = fspd::mu_series(p).mu;
    fspd::GreenEvaluator green(p, mu);

    OutputSink sink(output);
    std::ostream& os = sink.stream();
    os << "x,density\n";
    // The evaluator is defined away from x == 0 only; a grid point landing
    // there is nudged and the nudged coordinate is what gets printed.
    const double nudge = std::max(1e-12, 1e-9 * std::abs(x_max - x_min));
    for (int i = 0; i < points; ++i) {
        double x = (points == 1)
                       ? x_min
                       : x_min + (x_max - x_min) * static_cast<double>(i) /
                                     static_cast<double>(points - 1);
        if (std::abs(x) < nudge) {
            x = nudge;
        }
        os << num12(x) << "," << num12(green.density(x, time)) << "\n";
    }
    return 0;
}

int cmd_smile(const ModelFlags& mf, const QuoteFlags& qf, const SeriesFlags& sf,
              const std::string& strikes, const std::string& output) {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    if (std::sscanf(strikes.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
        !(step > 0.0) || !(hi >= lo)) {
        std::cerr << "error: --strikes expects lo:hi:step with step > 0 and "
                     "hi >= lo\n";
        return 1;
    }

    const fspd::ModelParams p = mf.resolve();
    const double mu = fspd::mu_series(p).mu;
    const fspd::SeriesControl control = sf.resolve();

    OutputSink sink(output);
    std::ostream& os = sink.stream();
    os << "strike,price\n";
    for (double k = lo; k <= hi + step * 1e-9; k += step) {
        fspd::MarketQuote q = qf.resolve();
        q.strike = k;
        const fspd::PriceResult r = fspd::call_price_series(p, q, mu, control);
        os << num12(k) << "," << num12(r.price) << "\n";
    }
    return 0;
}

/// Splits one CSV line on commas; no quoting in this format.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

/// Strict double parse: the whole field must be consumed.
bool parse_double(const std::string& s, double& out) {
    if (s.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

constexpr const char* kBatchHeader =
    "id,spot,strike,rate,dividend,maturity,alpha,gamma,sigma";

int cmd_batch(const std::string& input, const std::string& output,
              const SeriesFlags& sf) {
    std::ifstream in(input);
    if (!in) {
        throw fspd::IoError("cannot open input file: " + input);
    }

    std::string header;
    if (!std::getline(in, header)) {
        throw fspd::IoError("input file is empty: " + input);
    }
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    if (header != kBatchHeader) {
        std::cerr << "error: batch header must be exactly `" << kBatchHeader
                  << "`\n";
        return 1;
    }

    OutputSink sink(output);
    std::ostream& os = sink.stream();
    os << kBatchHeader << ",mu,price,terms,converged,error\n";

    // mu depends on (alpha, gamma, sigma) only; one value serves every row
    // with the same triple.
    fspd::KeyedCache<std::tuple<double, double, double>, double> mu_cache;
    const fspd::SeriesControl control = sf.resolve();

    int succeeded = 0;
    int failed = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv(line);
        std::string error;
        std::string mu_text;
        std::string price_text;
        std::string terms_text;
        std::string converged_text;
        try {
            if (fields.size() != 9) {
                throw fspd::DomainError("row", "must have exactly 9 fields");
            }
            double values[8];
            for (int i = 0; i < 8; ++i) {
                if (!parse_double(fields[static_cast<std::size_t>(i + 1)],
                                  values[i])) {
                    throw fspd::DomainError("row", "field " +
                                                       std::to_string(i + 1) +
                                                       " is not a number");
                }
            }
            fspd::MarketQuote q;
            q.spot = values[0];
            q.strike = values[1];
            q.rate = values[2];
            q.dividend = values[3];
            q.maturity = values[4];
            fspd::ModelParams p;
            p.alpha = values[5];
            p.gamma = values[6];
            p.sigma = values[7];
            p.theta = p.alpha - 2.0;

            const double mu = mu_cache.get_or_compute(
                std::make_tuple(p.alpha, p.gamma, p.sigma),
                [&p] { return fspd::mu_series(p).mu; });
            const fspd::PriceResult r =
                fspd::call_price_series(p, q, mu, control);
            mu_text = num12(mu);
            price_text = num12(r.price);
            terms_text = std::to_string(r.terms_used);
            converged_text = r.converged ? "true" : "false";
            ++succeeded;
        } catch (const fspd::Error& e) {
            error = e.what();
            for (char& c : error) {
                if (c == ',' || c == '\n') {
                    c = ';';
                }
            }
            ++failed;
        }
        os << line << "," << mu_text << "," << price_text << "," << terms_text
           << "," << converged_text << "," << error << "\n";
    }

    if (failed > 0 && succeeded == 0) {
        return 3;  // nothing priced; surface the failure
    }
    return 0;
}

/// Maps library exceptions onto the documented exit codes.
int run_mapped(const std::function<int()>& body) {
    try {
        return body();
    } catch (const fspd::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fspd::PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fspd::NonPositiveSum& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fspd::NegativePrice& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fspd::NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fspd::ContourError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fspd::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fspd: European call pricing under space-time fractional diffusion"};
    app.require_subcommand(1);
    app.footer(
        "Every flag is also readable from an FSPD_* environment variable "
        "(for example FSPD_ALPHA); explicit flags win.");

    // price
    ModelFlags price_model;
    QuoteFlags price_quote;
    SeriesFlags price_series;
    std::string price_format = "text";
    CLI::App* price = app.add_subcommand("price", "Price one European call");
    add_model_flags(price, price_model);
    add_quote_flags(price, price_quote);
    add_series_flags(price, price_series);
    price->add_option("--format", price_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("FSPD_FORMAT");

    // table
    ModelFlags table_model;
    QuoteFlags table_quote;
    int table_max_n = 7;
    int table_max_m = 7;
    std::string table_format = "text";
    std::string table_output;
    CLI::App* table =
        app.add_subcommand("table", "Term-by-term series table with a "
                                    "cumulative Call row");
    add_model_flags(table, table_model);
    add_quote_flags(table, table_quote);
    table->add_option("--max-n", table_max_n, "Largest row index")
        ->check(CLI::NonNegativeNumber)
        ->envname("FSPD_MAX_N");
    table->add_option("--max-m", table_max_m, "Largest column index")
        ->check(CLI::PositiveNumber)
        ->envname("FSPD_MAX_M");
    table->add_option("--format", table_format, "Output format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->envname("FSPD_FORMAT");
    table->add_option("--output", table_output, "Output file (default stdout)")
        ->envname("FSPD_OUTPUT");

    // batch
    std::string batch_input;
    std::string batch_output;
    SeriesFlags batch_series;
    CLI::App* batch = app.add_subcommand(
        "batch", "Price a CSV of quotes; header `id,spot,strike,rate,"
                 "dividend,maturity,alpha,gamma,sigma`");
    batch->add_option("--input", batch_input, "Input CSV path")
        ->required()
        ->envname("FSPD_INPUT");
    batch->add_option("--output", batch_output, "Output file (default stdout)")
        ->envname("FSPD_OUTPUT");
    add_series_flags(batch, batch_series);

    // mu
    ModelFlags mu_model;
    std::string mu_route = "series";
    std::string mu_format = "text";
    CLI::App* mu = app.add_subcommand("mu", "Risk-neutral drift factor");
    add_model_flags(mu, mu_model);
    mu->add_option("--route", mu_route, "Evaluation route")
        ->check(CLI::IsMember({"series", "mb", "subordination"}))
        ->envname("FSPD_ROUTE");
    mu->add_option("--format", mu_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("FSPD_FORMAT");

    // green
    ModelFlags green_model;
    double green_time = 1.0;
    double green_x_min = 0.1;
    double green_x_max = 2.0;
    int green_points = 20;
    std::string green_output;
    CLI::App* green = app.add_subcommand(
        "green", "Sample the transition density on an x-grid (CSV)");
    add_model_flags(green, green_model);
    green->add_option("--time", green_time, "Time coordinate, t > 0")
        ->envname("FSPD_TIME");
    green->add_option("--x-min", green_x_min, "Grid start (nonzero)")
        ->envname("FSPD_X_MIN");
    green->add_option("--x-max", green_x_max, "Grid end")
        ->envname("FSPD_X_MAX");
    green->add_option("--points", green_points, "Grid size")
        ->check(CLI::PositiveNumber)
        ->envname("FSPD_POINTS");
    green->add_option("--output", green_output, "Output file (default stdout)")
        ->envname("FSPD_OUTPUT");

    // smile
    ModelFlags smile_model;
    QuoteFlags smile_quote;
    SeriesFlags smile_series;
    std::string smile_strikes;
    std::string smile_output;
    CLI::App* smile = app.add_subcommand(
        "smile", "Price a strike sweep reusing one drift factor (CSV)");
    add_model_flags(smile, smile_model);
    add_quote_flags(smile, smile_quote);
    add_series_flags(smile, smile_series);
    smile->add_option("--strikes", smile_strikes, "Sweep as lo:hi:step")
        ->required()
        ->envname("FSPD_STRIKES");
    smile->add_option("--output", smile_output, "Output file (default stdout)")
        ->envname("FSPD_OUTPUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    if (price->parsed()) {
        return run_mapped([&] {
            return cmd_price(price_model, price_quote, price_series,
                             price_format);
        });
    }
    if (table->parsed()) {
        return run_mapped([&] {
            return cmd_table(table_model, table_quote, table_max_n,
                             table_max_m, table_format, table_output);
        });
    }
    if (batch->parsed()) {
        return run_mapped(
            [&] { return cmd_batch(batch_input, batch_output, batch_series); });
    }
    if (mu->parsed()) {
        return run_mapped([&] { return cmd_mu(mu_model, mu_route, mu_format); });
    }
    if (green->parsed()) {
        return run_mapped([&] {
            return cmd_green(green_model, green_time, green_x_min, green_x_max,
                             green_points, green_output);
        });
    }
    return run_mapped([&] {
        return cmd_smile(smile_model, smile_quote, smile_series, smile_strikes,
                         smile_output);
    });
}
