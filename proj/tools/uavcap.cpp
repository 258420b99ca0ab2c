// uavcap: ergodic capacity of relayed (Rayleigh product) vs direct MIMO
// links — Monte Carlo estimates, closed-form bounds, and the two design
// solvers (minimal relay power, largest useful relay antenna count).
//
// Output is CSV with '#'-prefixed metadata comments; all randomness is
// seeded, so identical invocations produce byte-identical output.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "uavcap/bounds.hpp"
#include "uavcap/capacity.hpp"
#include "uavcap/design.hpp"
#include "uavcap/precoding.hpp"
#include "uavcap/sweep.hpp"

namespace {

constexpr const char* kVersion = "uavcap 1.0.0";
constexpr double kLn2 = 0.69314718055994530942;

enum class Units { nats, bits, both };

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Powers are linear by default; a trailing "dB" suffix or --db converts.
double parse_power(const std::string& text, bool db_flag, const std::string& name) {
    std::string body = text;
    bool is_db = db_flag;
    const auto strip = [&body](const char* suffix) {
        const std::size_t len = std::string(suffix).size();
        if (body.size() > len && body.compare(body.size() - len, len, suffix) == 0) {
            body.erase(body.size() - len);
            while (!body.empty() && body.back() == ' ') {
                body.pop_back();
            }
            return true;
        }
        return false;
    };
    if (strip("dB") || strip("db") || strip("DB")) {
        is_db = true;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(body, &used);
    } catch (const std::exception&) {
        throw CLI::ValidationError(name, "expected a number, optionally suffixed with dB");
    }
    if (used != body.size()) {
        throw CLI::ValidationError(name, "expected a number, optionally suffixed with dB");
    }
    const double linear = is_db ? db_to_linear(value) : value;
    if (!(linear > 0.0)) {
        throw CLI::ValidationError(name, "power must be positive");
    }
    return linear;
}

std::vector<double> db_grid(double lo_db, double hi_db, double step_db) {
    std::vector<double> grid;
    for (double d = lo_db; d <= hi_db + 1e-9; d += step_db) {
        grid.push_back(db_to_linear(d));
    }
    return grid;
}

uavcap::SweepTable with_units(const uavcap::SweepTable& table, Units units) {
    if (units == Units::nats) {
        return table;
    }
    uavcap::SweepTable out;
    out.rows.resize(table.rows.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const bool cap = table.capacity_column[c];
        std::string bits_name = table.columns[c];
        if (cap) {
            const std::size_t pos = bits_name.rfind("_nats");
            bits_name.replace(pos, 5, "_bits");
        }
        if (!cap || units == Units::both) {
            out.columns.push_back(table.columns[c]);
            out.capacity_column.push_back(cap);
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                out.rows[r].push_back(table.rows[r][c]);
            }
        }
        if (cap) {
            out.columns.push_back(bits_name);
            out.capacity_column.push_back(false);
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                out.rows[r].push_back(table.rows[r][c] / kLn2);
            }
        }
    }
    return out;
}

void emit(const uavcap::SweepTable& table, Units units, const std::string& out_path,
          std::vector<std::string> comments) {
    comments.insert(comments.begin(), kVersion);
    const uavcap::SweepTable converted = with_units(table, units);
    if (out_path.empty()) {
        uavcap::write_csv(converted, std::cout, comments);
    } else {
        std::ofstream file(out_path);
        if (!file) {
            throw std::runtime_error("cannot open output file: " + out_path);
        }
        uavcap::write_csv(converted, file, comments);
    }
}

// Joins tables sharing a grid: keeps the first table's leading column,
// appends every other column, tagging names with the per-table suffix.
uavcap::SweepTable merge_tables(const std::vector<uavcap::SweepTable>& tables,
                                const std::vector<std::string>& suffixes) {
    uavcap::SweepTable out;
    out.columns.push_back(tables.front().columns.front());
    out.capacity_column.push_back(false);
    out.rows.resize(tables.front().rows.size());
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
        out.rows[r].push_back(tables.front().rows[r][0]);
    }
    for (std::size_t t = 0; t < tables.size(); ++t) {
        for (std::size_t c = 1; c < tables[t].columns.size(); ++c) {
            out.columns.push_back(tables[t].columns[c] + suffixes[t]);
            out.capacity_column.push_back(tables[t].capacity_column[c]);
            for (std::size_t r = 0; r < out.rows.size(); ++r) {
                out.rows[r].push_back(tables[t].rows[r][c]);
            }
        }
    }
    return out;
}

// The *_nats suffix sits mid-name after merging (e.g. product_mc_nats_K2);
// normalize so unit conversion still finds it at the end.
void retag_suffix(uavcap::SweepTable& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (!table.capacity_column[c]) {
            continue;
        }
        std::string& name = table.columns[c];
        const std::size_t pos = name.find("_nats");
        if (pos != std::string::npos && pos + 5 != name.size()) {
            const std::string tail = name.substr(pos + 5);
            name = name.substr(0, pos) + tail + "_nats";
        }
    }
}

void prepend_db_column(uavcap::SweepTable& table, const std::string& name) {
    table.columns.insert(table.columns.begin(), name);
    table.capacity_column.insert(table.capacity_column.begin(), false);
    for (auto& row : table.rows) {
        row.insert(row.begin(), 10.0 * std::log10(row.front()));
    }
}

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out;
    Units units = Units::both;
    bool db = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed (default 0)");
    cmd->add_option("--out", opts.out, "output CSV path (default stdout)");
    std::map<std::string, Units> unit_names{
        {"nats", Units::nats}, {"bits", Units::bits}, {"both", Units::both}};
    cmd->add_option("--units", opts.units, "capacity units in the output")
        ->transform(CLI::CheckedTransformer(unit_names, CLI::ignore_case));
    cmd->add_flag("--db", opts.db, "interpret plain power values as dB");
}

std::string mc_comment(std::uint64_t seed, std::int64_t trials) {
    return "seed=" + std::to_string(seed) + " trials=" + std::to_string(trials);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ergodic capacity of relayed (Rayleigh product) vs direct MIMO links"};
    app.require_subcommand(1);

    int M = 4, K = 1, N = 16;
    std::int64_t trials = 100000;
    std::string p_text, q_text, qhat_text;

    // --- ergodic ---
    auto* ergodic = app.add_subcommand("ergodic", "Monte Carlo ergodic capacity");
    CommonOpts ergodic_opts;
    std::string model = "direct";
    ergodic->add_option("--model", model, "direct or product")
        ->check(CLI::IsMember({"direct", "product"}))
        ->required();
    ergodic->add_option("--M", M, "user antennas")->check(CLI::PositiveNumber);
    ergodic->add_option("--K", K, "relay antennas")->check(CLI::PositiveNumber);
    ergodic->add_option("--N", N, "BTS antennas")->check(CLI::PositiveNumber);
    ergodic->add_option("--p", p_text, "user transmit power (direct model)");
    ergodic->add_option("--q", q_text, "relay transmit power (product model)");
    ergodic->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(2, 100000000));
    add_common(ergodic, ergodic_opts);

    // --- bound ---
    auto* bound = app.add_subcommand("bound", "closed-form capacity bounds");
    CommonOpts bound_opts;
    bool lower = false, upper = false;
    bound->add_flag("--lower", lower, "product-channel lower bound");
    bound->add_flag("--upper", upper, "direct-link upper bound");
    bound->add_option("--M", M, "user antennas")->check(CLI::PositiveNumber);
    bound->add_option("--K", K, "relay antennas")->check(CLI::PositiveNumber);
    bound->add_option("--N", N, "BTS antennas")->check(CLI::PositiveNumber);
    bound->add_option("--p", p_text, "user transmit power (upper bound)");
    bound->add_option("--q", q_text, "relay transmit power (lower bound)");
    add_common(bound, bound_opts);

    // --- min-q ---
    auto* minq = app.add_subcommand("min-q", "minimal relay power matching the direct link");
    CommonOpts minq_opts;
    double tol = 1e-3;
    minq->add_option("--M", M, "user antennas")->check(CLI::PositiveNumber);
    minq->add_option("--K", K, "relay antennas")->check(CLI::PositiveNumber);
    minq->add_option("--N", N, "BTS antennas")->check(CLI::PositiveNumber);
    minq->add_option("--p", p_text, "user transmit power")->required();
    minq->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(2, 100000000));
    minq->add_option("--tol", tol, "capacity-gap tolerance in nats")->check(CLI::PositiveNumber);
    add_common(minq, minq_opts);

    // --- k0 ---
    auto* k0 = app.add_subcommand("k0", "largest useful relay antenna count");
    CommonOpts k0_opts;
    double eta = 0.2;
    int k_max = 8;
    k0->add_option("--M", M, "user antennas")->check(CLI::PositiveNumber);
    k0->add_option("--N", N, "BTS antennas")->check(CLI::PositiveNumber);
    k0->add_option("--q-hat", qhat_text, "total relay power budget q*K")->required();
    k0->add_option("--eta", eta, "utility threshold")->check(CLI::PositiveNumber);
    k0->add_option("--K-max", k_max, "largest K to examine")->check(CLI::Range(2, 512));
    add_common(k0, k0_opts);

    // --- pdf ---
    auto* pdf = app.add_subcommand("pdf", "marginal eigenvalue density curve");
    CommonOpts pdf_opts;
    int L1 = 1, Lother = 4, points = 500;
    double lambda_max = 50.0;
    pdf->add_option("--L1", L1, "Wishart dimension")->check(CLI::PositiveNumber);
    pdf->add_option("--Lother", Lother, "degrees of freedom")->check(CLI::PositiveNumber);
    pdf->add_option("--lambda-max", lambda_max, "grid end")->check(CLI::PositiveNumber);
    pdf->add_option("--points", points, "grid points")->check(CLI::Range(2, 1000000));
    add_common(pdf, pdf_opts);

    // --- integral ---
    auto* integral = app.add_subcommand("integral", "double-integral capacity bound");
    CommonOpts integral_opts;
    int order = 96;
    integral->add_option("--M", M, "user antennas")->check(CLI::PositiveNumber);
    integral->add_option("--K", K, "relay antennas")->check(CLI::PositiveNumber);
    integral->add_option("--N", N, "BTS antennas")->check(CLI::PositiveNumber);
    integral->add_option("--q", q_text, "relay transmit power")->required();
    integral->add_option("--order", order, "Gauss-Laguerre order per axis")
        ->check(CLI::Range(1, 160));
    add_common(integral, integral_opts);

    // --- figure ---
    auto* figure = app.add_subcommand("figure", "preset experiment sweeps");
    CommonOpts figure_opts;
    int figure_id = 3;
    std::int64_t sweep_trials = 10000;
    figure->add_option("id", figure_id, "figure number: 3, 4, 5, 6 or 7")
        ->check(CLI::IsMember({3, 4, 5, 6, 7}))
        ->required();
    figure->add_option("--trials", sweep_trials, "Monte Carlo trials per grid point")
        ->check(CLI::Range(2, 100000000));
    add_common(figure, figure_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ergodic) {
            const uavcap::AntennaConfig config(M, K, N);
            const uavcap::MonteCarloSettings mc{trials, ergodic_opts.seed};
            uavcap::SweepSpec spec;
            spec.M = M;
            spec.K = K;
            spec.N = N;
            spec.mc = mc;
            if (model == "direct") {
                if (p_text.empty()) {
                    throw CLI::ValidationError("--p", "required for --model direct");
                }
                spec.parameter = uavcap::SweptParam::p;
                spec.grid = {parse_power(p_text, ergodic_opts.db, "--p")};
                spec.quantities = {uavcap::Quantity::direct_mc};
            } else {
                if (q_text.empty()) {
                    throw CLI::ValidationError("--q", "required for --model product");
                }
                spec.parameter = uavcap::SweptParam::q;
                spec.grid = {parse_power(q_text, ergodic_opts.db, "--q")};
                spec.quantities = {uavcap::Quantity::product_mc};
            }
            emit(uavcap::sweep(spec), ergodic_opts.units, ergodic_opts.out,
                 {"ergodic model=" + model + " M=" + std::to_string(M) +
                      " K=" + std::to_string(K) + " N=" + std::to_string(N),
                  mc_comment(ergodic_opts.seed, trials)});
        } else if (*bound) {
            if (lower == upper) {
                throw CLI::ValidationError("bound", "exactly one of --lower/--upper");
            }
            uavcap::SweepTable table;
            if (lower) {
                const double q = parse_power(q_text.empty() ? "1" : q_text, bound_opts.db, "--q");
                const uavcap::AntennaConfig config(M, K, N);
                table.columns = {"q", "product_lower_nats"};
                table.capacity_column = {false, true};
                table.rows = {{q, uavcap::lower_bound_product(config, q).value_nats}};
            } else {
                const double p = parse_power(p_text.empty() ? "1" : p_text, bound_opts.db, "--p");
                table.columns = {"p", "direct_upper_nats"};
                table.capacity_column = {false, true};
                table.rows = {{p, uavcap::upper_bound_direct(M, N, p).value_nats}};
            }
            emit(table, bound_opts.units, bound_opts.out,
                 {std::string("bound ") + (lower ? "lower" : "upper") + " M=" + std::to_string(M) +
                  " K=" + std::to_string(K) + " N=" + std::to_string(N)});
        } else if (*minq) {
            const uavcap::AntennaConfig config(M, K, N);
            const double p = parse_power(p_text, minq_opts.db, "--p");
            const uavcap::MonteCarloSettings mc{trials, minq_opts.seed};
            const uavcap::MinQResult result = uavcap::min_q_numeric(config, p, mc, tol);
            uavcap::SweepTable table;
            table.columns = {"p", "q_numeric", "q_over_p_numeric", "direct_mc_nats",
                             "direct_mc_stderr_nats"};
            table.capacity_column = {false, false, false, true, true};
            table.rows = {{p, result.q_numeric, result.q_numeric / p, result.direct_mean_nats,
                           result.direct_stderr_nats}};
            if (result.q_closed.has_value()) {
                table.columns.insert(table.columns.begin() + 2, "q_closed");
                table.capacity_column.insert(table.capacity_column.begin() + 2, false);
                table.rows[0].insert(table.rows[0].begin() + 2, *result.q_closed);
                table.columns.insert(table.columns.begin() + 4, "q_over_p_closed");
                table.capacity_column.insert(table.capacity_column.begin() + 4, false);
                table.rows[0].insert(table.rows[0].begin() + 4, *result.q_closed / p);
            }
            emit(table, minq_opts.units, minq_opts.out,
                 {"min-q M=" + std::to_string(M) + " K=" + std::to_string(K) +
                      " N=" + std::to_string(N) + " tol=" + std::to_string(tol),
                  mc_comment(minq_opts.seed, trials)});
        } else if (*k0) {
            const double q_hat = parse_power(qhat_text, k0_opts.db, "--q-hat");
            const uavcap::K0Result result = uavcap::k0_optimize(M, N, q_hat, eta, k_max);
            uavcap::SweepTable table;
            table.columns = {"K", "s_lower_nats", "increment_ratio"};
            table.capacity_column = {false, true, false};
            for (const auto& [Kv, ratio] : result.ratios) {
                const double s =
                    uavcap::lower_bound_product(uavcap::AntennaConfig(M, Kv, N), q_hat / Kv)
                        .value_nats;
                table.rows.push_back({static_cast<double>(Kv), s, ratio});
            }
            emit(table, k0_opts.units, k0_opts.out,
                 {"k0 M=" + std::to_string(M) + " N=" + std::to_string(N) +
                      " eta=" + std::to_string(eta),
                  "K0=" + std::to_string(result.K0)});
        } else if (*pdf) {
            uavcap::SweepTable table;
            table.columns = {"lambda", "density"};
            table.capacity_column = {false, false};
            for (int i = 0; i < points; ++i) {
                const double lam = lambda_max * i / (points - 1);
                table.rows.push_back({lam, uavcap::eigen_density(lam, L1, Lother)});
            }
            emit(table, pdf_opts.units, pdf_opts.out,
                 {"pdf L1=" + std::to_string(L1) + " Lother=" + std::to_string(Lother)});
        } else if (*integral) {
            const uavcap::AntennaConfig config(M, K, N);
            const double q = parse_power(q_text, integral_opts.db, "--q");
            const double value =
                order == 96 ? uavcap::integral_lower_bound(config, q)
                            : uavcap::integral_lower_bound(config, q,
                                                           uavcap::gauss_laguerre_rule(order));
            uavcap::SweepTable table;
            table.columns = {"q", "integral_lower_nats"};
            table.capacity_column = {false, true};
            table.rows = {{q, value}};
            emit(table, integral_opts.units, integral_opts.out,
                 {"integral M=" + std::to_string(M) + " K=" + std::to_string(K) +
                  " N=" + std::to_string(N) + " order=" + std::to_string(order)});
        } else if (*figure) {
            const uavcap::MonteCarloSettings mc{sweep_trials, figure_opts.seed};
            std::vector<std::string> comments = {mc_comment(figure_opts.seed, sweep_trials)};
            uavcap::SweepTable merged;
            if (figure_id == 3) {
                // direct vs relayed capacity and both bounds, q = 10 p.
                const std::vector<double> grid = db_grid(-10.0, 20.0, 2.5);
                std::vector<uavcap::SweepTable> parts;
                std::vector<std::string> suffixes;
                uavcap::SweepSpec direct;
                direct.parameter = uavcap::SweptParam::p;
                direct.grid = grid;
                direct.M = 4;
                direct.N = 16;
                direct.quantities = {uavcap::Quantity::direct_mc, uavcap::Quantity::direct_upper};
                direct.mc = mc;
                parts.push_back(uavcap::sweep(direct));
                suffixes.emplace_back("");
                for (const int Kv : {1, 2, 4}) {
                    uavcap::SweepSpec product = direct;
                    product.K = Kv;
                    product.q_over_p = 10.0;
                    product.quantities = {uavcap::Quantity::product_mc,
                                          uavcap::Quantity::product_lower};
                    parts.push_back(uavcap::sweep(product));
                    suffixes.push_back("_K" + std::to_string(Kv));
                }
                merged = merge_tables(parts, suffixes);
                comments.insert(comments.begin(),
                                "figure 3: M=4 N=16, q=10p, K in {1,2,4}, p swept in dB");
            } else if (figure_id == 4 || figure_id == 7) {
                const bool ratio = figure_id == 7;
                const std::vector<double> grid =
                    ratio ? db_grid(-20.0, 10.0, 2.5) : db_grid(-10.0, 20.0, 2.5);
                std::vector<uavcap::SweepTable> parts;
                std::vector<std::string> suffixes;
                for (const int Kv : {1, 2}) {
                    uavcap::SweepSpec spec;
                    spec.parameter = uavcap::SweptParam::p;
                    spec.grid = grid;
                    spec.M = 4;
                    spec.K = Kv;
                    spec.N = 16;
                    spec.mc = mc;
                    spec.quantities =
                        ratio ? std::vector<uavcap::Quantity>{uavcap::Quantity::q_ratio_numeric,
                                                              uavcap::Quantity::q_ratio_closed}
                              : std::vector<uavcap::Quantity>{uavcap::Quantity::min_q_numeric,
                                                              uavcap::Quantity::min_q_closed};
                    parts.push_back(uavcap::sweep(spec));
                    suffixes.push_back("_K" + std::to_string(Kv));
                }
                merged = merge_tables(parts, suffixes);
                comments.insert(comments.begin(),
                                ratio ? "figure 7: q/p ratio of the minimal relay power, M=4 N=16"
                                      : "figure 4: minimal relay power q, M=4 N=16");
            } else if (figure_id == 5) {
                // Relayed capacity with and without precoding at a fixed
                // total power budget; the SNR axis is q_hat in dB, q = q_hat/K.
                const std::vector<double> grid = db_grid(-10.0, 20.0, 2.5);
                std::vector<uavcap::SweepTable> parts;
                std::vector<std::string> suffixes;
                for (const int Kv : {4, 8}) {
                    uavcap::SweepSpec spec;
                    spec.parameter = uavcap::SweptParam::q_hat;
                    spec.grid = grid;
                    spec.M = 10;
                    spec.K = Kv;
                    spec.N = 32;
                    spec.mc = mc;
                    spec.quantities = {uavcap::Quantity::product_mc,
                                       uavcap::Quantity::precoded_equal_mc,
                                       uavcap::Quantity::precoded_waterfill_mc,
                                       uavcap::Quantity::product_lower,
                                       uavcap::Quantity::integral_lower};
                    parts.push_back(uavcap::sweep(spec));
                    suffixes.push_back("_K" + std::to_string(Kv));
                }
                merged = merge_tables(parts, suffixes);
                comments.insert(comments.begin(),
                                "figure 5: M=10 N=32, fixed total power q_hat, q = q_hat/K");
            } else {  // figure 6
                uavcap::SweepTable table;
                table.columns = {"K", "ratio_at_minus10dB", "ratio_at_0dB", "ratio_at_10dB"};
                table.capacity_column = {false, false, false, false};
                std::vector<uavcap::K0Result> results;
                for (const double db : {-10.0, 0.0, 10.0}) {
                    results.push_back(uavcap::k0_optimize(12, 32, db_to_linear(db), eta, 8));
                }
                for (std::size_t i = 0; i < results.front().ratios.size(); ++i) {
                    table.rows.push_back({static_cast<double>(results[0].ratios[i].first),
                                          results[0].ratios[i].second,
                                          results[1].ratios[i].second,
                                          results[2].ratios[i].second});
                }
                merged = table;
                comments = {"figure 6: capacity increment ratio, M=12 N=32, K=1..8",
                            "K0 at eta=" + std::to_string(eta) + ": qhat=-10dB -> " +
                                std::to_string(results[0].K0) + ", 0dB -> " +
                                std::to_string(results[1].K0) + ", +10dB -> " +
                                std::to_string(results[2].K0)};
            }
            if (figure_id != 6) {
                retag_suffix(merged);
                prepend_db_column(merged, figure_id == 5 ? "q_hat_dB" : "p_dB");
            }
            emit(merged, figure_opts.units, figure_opts.out, comments);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
