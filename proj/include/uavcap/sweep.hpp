#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uavcap/capacity.hpp"

namespace uavcap {

enum class SweptParam { p, q, q_hat, K };

enum class Quantity {
    direct_mc,             // ergodic mean + stderr of the direct link at p
    direct_upper,          // M ln(1 + p N)
    product_mc,            // ergodic mean + stderr of the relayed link at q
    product_lower,         // L1 ln(1 + q exp(g - 2 gamma))
    precoded_equal_mc,     // equal-allocation precoded mean + stderr
    precoded_waterfill_mc, // water-filling precoded mean + stderr
    integral_lower,        // tensorized double-integral bound
    min_q_numeric,         // Monte Carlo bisection minimal q at this row's p
    min_q_closed,          // closed-form minimal q (requires K <= M <= N)
    q_ratio_numeric,       // min_q_numeric / p
    q_ratio_closed,        // min_q_closed / p
};

struct SweepSpec {
    SweptParam parameter = SweptParam::p;
    std::vector<double> grid;  // linear powers, or integer-valued K

    int M = 1;
    int K = 1;
    int N = 1;
    double p = 0.0;      // fixed values for whatever is not swept
    double q = 0.0;
    double q_hat = 0.0;  // when set (or swept), q = q_hat / K
    double q_over_p = 0.0;  // when > 0 and sweeping p, couples q = q_over_p * p

    std::vector<Quantity> quantities;
    MonteCarloSettings mc;
    double min_q_tol = 1e-3;
    int quadrature_order = 96;
};

// Column-oriented numeric table. capacity_column marks the columns holding
// nats, which the CLI may convert to bits; everything else (powers, ratios,
// counts) is unit-free.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<bool> capacity_column;
    std::vector<std::vector<double>> rows;
};

// One row per grid point. Row r draws its Monte Carlo trials from the
// disjoint stream range [r * trials, (r+1) * trials), so rows are
// independent, may be evaluated in any order, and a single-point grid
// reproduces the corresponding direct operation call exactly.
SweepTable sweep(const SweepSpec& spec);

// CSV with '#'-prefixed comment lines, a mandatory header row, and floats
// at 9 significant digits.
void write_csv(const SweepTable& table, std::ostream& out,
               const std::vector<std::string>& comments);

}  // namespace uavcap
