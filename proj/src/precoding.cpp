#include "uavcap/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavcap {

namespace {

// Descending eigen-decomposition of a Hermitian PSD matrix; eigenvalues
// clamped at 0.
void psd_eigs_descending(const ComplexMatrix& A, std::vector<double>& values,
                         ComplexMatrix* vectors) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
    if (vectors != nullptr) {
        solver.compute(A);
    } else {
        solver.compute(A, Eigen::EigenvaluesOnly);
    }
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectra: eigensolver did not converge");
    }
    const auto n = A.rows();
    values.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] =
            std::max(0.0, solver.eigenvalues()[n - 1 - i]);
    }
    if (vectors != nullptr) {
        vectors->resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            vectors->col(i) = solver.eigenvectors().col(n - 1 - i);
        }
    }
}

double precoded_capacity_from_spectra(const EigenSpectra& sp, double q,
                                      AllocationRule rule, int K) {
    std::vector<double> gains(static_cast<std::size_t>(K));
    bool any_positive = false;
    for (int k = 0; k < K; ++k) {
        gains[k] = q * sp.lambda1[k] * sp.lambda2[k];
        any_positive = any_positive || gains[k] > 0.0;
    }
    if (!any_positive) {
        return 0.0;  // zero channel carries nothing regardless of allocation
    }
    if (rule == AllocationRule::equal) {
        double acc = 0.0;
        for (const double g : gains) {
            acc += std::log1p(g);
        }
        return acc;
    }
    const PowerAllocation alloc = water_fill(gains, static_cast<double>(K));
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
        acc += std::log1p(alloc.d[k] * gains[k]);
    }
    return acc;
}

}  // namespace

EigenSpectra spectra(const ChannelPair& pair) {
    const GramPair g = gram_pair(pair);
    EigenSpectra sp;
    psd_eigs_descending(g.Sigma1, sp.lambda1, nullptr);
    psd_eigs_descending(g.Sigma2, sp.lambda2, nullptr);
    return sp;
}

ComplexMatrix optimal_precoder(const ChannelPair& pair, const PowerAllocation& alloc) {
    const GramPair g = gram_pair(pair);
    const auto K = g.Sigma1.rows();
    if (static_cast<Eigen::Index>(alloc.d.size()) != K) {
        throw std::invalid_argument("optimal_precoder: allocation size must be K");
    }
    std::vector<double> l1, l2;
    ComplexMatrix W1, W2;
    psd_eigs_descending(g.Sigma1, l1, &W1);
    psd_eigs_descending(g.Sigma2, l2, &W2);

    Eigen::VectorXd sqrt_d(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        if (alloc.d[static_cast<std::size_t>(k)] < 0.0) {
            throw std::invalid_argument("optimal_precoder: negative power");
        }
        sqrt_d[k] = std::sqrt(alloc.d[static_cast<std::size_t>(k)]);
    }
    return W2 * sqrt_d.asDiagonal() * W1.adjoint();
}

PowerAllocation water_fill(const std::vector<double>& gains, double total) {
    if (gains.empty()) {
        throw std::invalid_argument("water_fill: no modes");
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("water_fill: total must be > 0");
    }
    for (const double g : gains) {
        if (g < 0.0 || !std::isfinite(g)) {
            throw std::invalid_argument("water_fill: gains must be finite and >= 0");
        }
    }

    const auto n = gains.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

    std::size_t positive = 0;
    while (positive < n && gains[order[positive]] > 0.0) {
        ++positive;
    }
    if (positive == 0) {
        throw std::invalid_argument("water_fill: all gains are zero");
    }

    PowerAllocation alloc;
    alloc.d.assign(n, 0.0);
    double inv_sum = 0.0;
    for (std::size_t i = 0; i < positive; ++i) {
        inv_sum += 1.0 / gains[order[i]];
    }
    for (std::size_t active = positive; active >= 1; --active) {
        const double mu = (total + inv_sum) / static_cast<double>(active);
        // Gains are sorted, so only the weakest active mode can go negative.
        if (mu - 1.0 / gains[order[active - 1]] > 0.0) {
            for (std::size_t i = 0; i < active; ++i) {
                alloc.d[order[i]] = mu - 1.0 / gains[order[i]];
            }
            return alloc;
        }
        inv_sum -= 1.0 / gains[order[active - 1]];
    }
    throw std::runtime_error("water_fill: active-set search failed");  // unreachable
}

ErgodicEstimate precoded_ergodic(const AntennaConfig& config, double q,
                                 AllocationRule rule, const MonteCarloSettings& mc) {
    if (mc.trials < 2) {
        throw std::invalid_argument("precoded_ergodic: trials must be >= 2");
    }
    if (!(q > 0.0)) {
        throw std::invalid_argument("precoded_ergodic: q must be > 0");
    }

    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t t = 0; t < mc.trials; ++t) {
        RandomStream stream(mc.seed, mc.stream_offset + static_cast<std::uint64_t>(t));
        const ChannelPair pair = sample_channel_pair(config, stream);
        const EigenSpectra sp = spectra(pair);
        const double cap = precoded_capacity_from_spectra(sp, q, rule, config.K);
        const double delta = cap - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (cap - mean);
    }

    ErgodicEstimate est;
    est.mean_nats = mean;
    est.stderr_nats = std::sqrt(m2 / static_cast<double>(mc.trials - 1)) /
                      std::sqrt(static_cast<double>(mc.trials));
    est.trials = mc.trials;
    est.seed = mc.seed;
    return est;
}

double eigen_density_weightless(double lambda, int L1, int Lother) {
    if (L1 < 1 || Lother < L1) {
        throw std::invalid_argument("eigen_density: requires Lother >= L1 >= 1");
    }
    if (lambda < 0.0) {
        throw std::invalid_argument("eigen_density: lambda must be >= 0");
    }
    const int delta = Lother - L1;
    double sum = 0.0;
    for (int k = 0; k < L1; ++k) {
        // k! / (k + delta)! = 1 / prod_{j=1}^{delta} (k + j)
        double ratio = 1.0;
        for (int j = 1; j <= delta; ++j) {
            ratio /= static_cast<double>(k + j);
        }
        const double lag = laguerre_assoc(k, delta, lambda);
        sum += ratio * lag * lag;
    }
    return std::pow(lambda, delta) * sum / static_cast<double>(L1);
}

double eigen_density(double lambda, int L1, int Lother) {
    return eigen_density_weightless(lambda, L1, Lother) * std::exp(-lambda);
}

double integral_lower_bound(const AntennaConfig& config, double q,
                            const QuadratureRule& rule) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("integral_lower_bound: q must be > 0");
    }
    const int n = rule.order;
    std::vector<double> f1(n), f2(n);
    for (int i = 0; i < n; ++i) {
        f1[i] = rule.weights[i] *
                eigen_density_weightless(rule.nodes[i], config.L1, config.L2);
        f2[i] = rule.weights[i] *
                eigen_density_weightless(rule.nodes[i], config.L1, config.L3);
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double inner = 0.0;
        for (int j = 0; j < n; ++j) {
            inner += f2[j] * std::log1p(q * rule.nodes[i] * rule.nodes[j]);
        }
        acc += f1[i] * inner;
    }
    return config.L1 * acc;
}

double integral_lower_bound(const AntennaConfig& config, double q) {
    const double coarse = integral_lower_bound(config, q, gauss_laguerre_rule(64));
    const double fine = integral_lower_bound(config, q, gauss_laguerre_rule(96));
    if (std::abs(fine - coarse) > 1e-8) {
        throw std::runtime_error(
            "integral_lower_bound: quadrature not stabilized between orders 64 and 96");
    }
    return fine;
}

}  // namespace uavcap
