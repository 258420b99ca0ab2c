#include "uavcap/sweep.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uavcap/bounds.hpp"
#include "uavcap/design.hpp"
#include "uavcap/precoding.hpp"

namespace uavcap {

namespace {

const char* swept_name(SweptParam p) {
    switch (p) {
        case SweptParam::p: return "p";
        case SweptParam::q: return "q";
        case SweptParam::q_hat: return "q_hat";
        case SweptParam::K: return "K";
    }
    return "?";
}

struct RowContext {
    AntennaConfig config;
    double p;
    double q;
    MonteCarloSettings mc;
};

}  // namespace

SweepTable sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    if (spec.quantities.empty()) {
        throw std::invalid_argument("sweep: no quantities requested");
    }

    SweepTable table;
    table.columns.emplace_back(swept_name(spec.parameter));
    table.capacity_column.push_back(false);
    auto add_column = [&table](const std::string& name, bool capacity) {
        table.columns.push_back(name);
        table.capacity_column.push_back(capacity);
    };
    for (const Quantity qty : spec.quantities) {
        switch (qty) {
            case Quantity::direct_mc:
                add_column("direct_mc_nats", true);
                add_column("direct_mc_stderr_nats", true);
                break;
            case Quantity::direct_upper:
                add_column("direct_upper_nats", true);
                break;
            case Quantity::product_mc:
                add_column("product_mc_nats", true);
                add_column("product_mc_stderr_nats", true);
                break;
            case Quantity::product_lower:
                add_column("product_lower_nats", true);
                break;
            case Quantity::precoded_equal_mc:
                add_column("precoded_equal_nats", true);
                add_column("precoded_equal_stderr_nats", true);
                break;
            case Quantity::precoded_waterfill_mc:
                add_column("precoded_waterfill_nats", true);
                add_column("precoded_waterfill_stderr_nats", true);
                break;
            case Quantity::integral_lower:
                add_column("integral_lower_nats", true);
                break;
            case Quantity::min_q_numeric:
                add_column("min_q_numeric", false);
                break;
            case Quantity::min_q_closed:
                add_column("min_q_closed", false);
                break;
            case Quantity::q_ratio_numeric:
                add_column("q_over_p_numeric", false);
                break;
            case Quantity::q_ratio_closed:
                add_column("q_over_p_closed", false);
                break;
        }
    }

    const QuadratureRule rule = [&spec]() -> QuadratureRule {
        for (const Quantity qty : spec.quantities) {
            if (qty == Quantity::integral_lower) {
                return gauss_laguerre_rule(spec.quadrature_order);
            }
        }
        return {};
    }();

    for (std::size_t r = 0; r < spec.grid.size(); ++r) {
        const double value = spec.grid[r];

        int K = spec.K;
        double p = spec.p;
        double q = spec.q;
        double q_hat = spec.q_hat;
        switch (spec.parameter) {
            case SweptParam::p:
                p = value;
                if (spec.q_over_p > 0.0) {
                    q = spec.q_over_p * p;
                }
                break;
            case SweptParam::q:
                q = value;
                break;
            case SweptParam::q_hat:
                q_hat = value;
                break;
            case SweptParam::K:
                K = static_cast<int>(std::lround(value));
                break;
        }
        if (q_hat > 0.0) {
            q = q_hat / K;
        }

        RowContext ctx{AntennaConfig(spec.M, K, spec.N), p, q, spec.mc};
        ctx.mc.stream_offset =
            spec.mc.stream_offset +
            static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(spec.mc.trials);

        // min-q is shared between its numeric/ratio columns.
        std::optional<MinQResult> min_q;
        auto min_q_result = [&]() -> const MinQResult& {
            if (!min_q.has_value()) {
                min_q = min_q_numeric(ctx.config, ctx.p, ctx.mc, spec.min_q_tol);
            }
            return *min_q;
        };

        std::vector<double> row;
        row.push_back(value);
        for (const Quantity qty : spec.quantities) {
            switch (qty) {
                case Quantity::direct_mc: {
                    const ErgodicEstimate est =
                        ergodic_estimate(ChannelModel::direct, ctx.config, ctx.p, ctx.mc);
                    row.push_back(est.mean_nats);
                    row.push_back(est.stderr_nats);
                    break;
                }
                case Quantity::direct_upper:
                    row.push_back(upper_bound_direct(ctx.config.M, ctx.config.N, ctx.p).value_nats);
                    break;
                case Quantity::product_mc: {
                    const ErgodicEstimate est =
                        ergodic_estimate(ChannelModel::product, ctx.config, ctx.q, ctx.mc);
                    row.push_back(est.mean_nats);
                    row.push_back(est.stderr_nats);
                    break;
                }
                case Quantity::product_lower:
                    row.push_back(lower_bound_product(ctx.config, ctx.q).value_nats);
                    break;
                case Quantity::precoded_equal_mc: {
                    const ErgodicEstimate est =
                        precoded_ergodic(ctx.config, ctx.q, AllocationRule::equal, ctx.mc);
                    row.push_back(est.mean_nats);
                    row.push_back(est.stderr_nats);
                    break;
                }
                case Quantity::precoded_waterfill_mc: {
                    const ErgodicEstimate est =
                        precoded_ergodic(ctx.config, ctx.q, AllocationRule::water_filling, ctx.mc);
                    row.push_back(est.mean_nats);
                    row.push_back(est.stderr_nats);
                    break;
                }
                case Quantity::integral_lower:
                    row.push_back(integral_lower_bound(ctx.config, ctx.q, rule));
                    break;
                case Quantity::min_q_numeric:
                    row.push_back(min_q_result().q_numeric);
                    break;
                case Quantity::min_q_closed:
                    row.push_back(min_q_closed(ctx.config, ctx.p));
                    break;
                case Quantity::q_ratio_numeric:
                    row.push_back(min_q_result().q_numeric / ctx.p);
                    break;
                case Quantity::q_ratio_closed:
                    row.push_back(min_q_closed(ctx.config, ctx.p) / ctx.p);
                    break;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_csv(const SweepTable& table, std::ostream& out,
               const std::vector<std::string>& comments) {
    for (const std::string& comment : comments) {
        out << "# " << comment << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c == 0 ? "" : ",") << table.columns[c];
    }
    out << "\n";
    std::ostringstream fmt;
    fmt.precision(9);
    for (const auto& row : table.rows) {
        fmt.str("");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != 0) {
                fmt << ",";
            }
            fmt << row[c];
        }
        out << fmt.str() << "\n";
    }
}

}  // namespace uavcap
