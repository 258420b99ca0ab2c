#include "uavcap/design.hpp"

#include <cmath>
#include <stdexcept>

namespace uavcap {

namespace {

// Mean of sum_i ln(1 + c mu_i) over per-trial eigenvalue sets.
double mean_capacity(const std::vector<std::vector<double>>& eigs, double c) {
    double acc = 0.0;
    for (const auto& trial : eigs) {
        double cap = 0.0;
        for (const double mu : trial) {
            cap += std::log1p(c * mu);
        }
        acc += cap;
    }
    return acc / static_cast<double>(eigs.size());
}

}  // namespace

MinQResult min_q_numeric(const AntennaConfig& config, double p,
                         const MonteCarloSettings& mc, double tol) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("min_q_numeric: p must be > 0");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("min_q_numeric: tol must be > 0");
    }
    if (mc.trials < 2) {
        throw std::invalid_argument("min_q_numeric: trials must be >= 2");
    }

    // One pass of channel draws, reused for every probed q.
    std::vector<std::vector<double>> direct_eigs, product_eigs;
    direct_eigs.reserve(static_cast<std::size_t>(mc.trials));
    product_eigs.reserve(static_cast<std::size_t>(mc.trials));
    for (std::int64_t t = 0; t < mc.trials; ++t) {
        RandomStream ds(mc.seed, mc.stream_offset + static_cast<std::uint64_t>(t));
        direct_eigs.push_back(
            direct_gram_eigenvalues(sample_gaussian_matrix(config.N, config.M, ds)));
        RandomStream ps(mc.seed, mc.stream_offset + static_cast<std::uint64_t>(t));
        product_eigs.push_back(product_gram_eigenvalues(sample_channel_pair(config, ps)));
    }

    // Direct-link reference with its spread.
    double r_mean = 0.0;
    double r_m2 = 0.0;
    std::int64_t n = 0;
    for (const auto& trial : direct_eigs) {
        double cap = 0.0;
        for (const double nu : trial) {
            cap += std::log1p(p * nu);
        }
        ++n;
        const double delta = cap - r_mean;
        r_mean += delta / static_cast<double>(n);
        r_m2 += delta * (cap - r_mean);
    }
    const double r_stderr = std::sqrt(r_m2 / static_cast<double>(mc.trials - 1)) /
                            std::sqrt(static_cast<double>(mc.trials));

    // Bracket [q_lo, q_hi] with S(q_lo) < R < S(q_hi); S(0+) = 0 < R always.
    double q_lo = 0.0;
    double q_hi = p / static_cast<double>(config.K);
    int doublings = 0;
    while (mean_capacity(product_eigs, q_hi) < r_mean) {
        q_hi *= 2.0;
        if (++doublings > 60) {
            throw std::runtime_error("min_q_numeric: bracket expansion failed");
        }
    }

    double q_mid = 0.5 * (q_lo + q_hi);
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        q_mid = 0.5 * (q_lo + q_hi);
        const double s = mean_capacity(product_eigs, q_mid);
        converged = std::abs(s - r_mean) < tol;
        if (!converged) {
            if (s < r_mean) {
                q_lo = q_mid;
            } else {
                q_hi = q_mid;
            }
        }
    }
    if (!converged) {
        throw std::runtime_error("min_q_numeric: bisection did not reach the gap tolerance");
    }

    MinQResult result{.q_closed = std::nullopt,
                      .q_numeric = q_mid,
                      .p = p,
                      .config = config,
                      .tolerance_nats = tol,
                      .direct_mean_nats = r_mean,
                      .direct_stderr_nats = r_stderr};
    if (config.K <= config.M && config.M <= config.N) {
        result.q_closed = required_q_closed(config, p);
    }
    return result;
}

double min_q_closed(const AntennaConfig& config, double p) {
    return required_q_closed(config, p);
}

K0Result k0_optimize(int M, int N, double q_hat, double eta, int K_max) {
    if (!(q_hat > 0.0)) {
        throw std::invalid_argument("k0_optimize: q_hat must be > 0");
    }
    if (!(eta > 0.0)) {
        throw std::invalid_argument("k0_optimize: eta must be > 0");
    }
    if (K_max < 2) {
        throw std::invalid_argument("k0_optimize: K_max must be >= 2");
    }

    std::vector<double> s(static_cast<std::size_t>(K_max) + 2, 0.0);
    for (int K = 1; K <= K_max + 1; ++K) {
        s[static_cast<std::size_t>(K)] =
            lower_bound_product(AntennaConfig(M, K, N), q_hat / K).value_nats;
    }

    K0Result result;
    result.eta = eta;
    result.q_hat = q_hat;
    int last_clearing = 0;
    for (int K = 1; K <= K_max; ++K) {
        const double ratio = s[static_cast<std::size_t>(K) + 1] /
                                 s[static_cast<std::size_t>(K)] -
                             1.0;
        result.ratios.emplace_back(K, ratio);
        if (ratio >= eta) {
            last_clearing = K;
        }
    }
    result.K0 = last_clearing == 0 ? 0 : std::min(K_max, last_clearing + 1);
    return result;
}

}  // namespace uavcap
