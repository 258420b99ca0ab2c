#include "uavcap/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "uavcap/special_functions.hpp"

namespace uavcap {

double g_of_dims(const AntennaConfig& config) {
    double acc = 0.0;
    for (int l = 1; l <= config.L1; ++l) {
        acc += harmonic(config.L2 - l) + harmonic(config.L3 - l);
    }
    return acc / static_cast<double>(config.L1);
}

BoundReport lower_bound_product(const AntennaConfig& config, double q) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("lower_bound_product: q must be > 0");
    }
    const double g = g_of_dims(config);
    const double value =
        config.L1 * std::log1p(q * std::exp(g - 2.0 * kEulerGamma));
    return {value, BoundKind::lower_product, config, q};
}

BoundReport upper_bound_direct(int M, int N, double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("upper_bound_direct: p must be > 0");
    }
    const AntennaConfig config(M, 1, N);
    const double value = M * std::log1p(p * N);
    return {value, BoundKind::upper_direct, config, p};
}

bool snr_condition(double q, int K, double p) {
    if (!(q > 0.0) || !(p > 0.0) || K < 1) {
        throw std::invalid_argument("snr_condition: q, p must be > 0 and K >= 1");
    }
    return q * K > p;
}

double required_q_closed(const AntennaConfig& config, double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("required_q_closed: p must be > 0");
    }
    if (!(config.K <= config.M && config.M <= config.N)) {
        throw std::invalid_argument("required_q_closed: requires K <= M <= N");
    }
    const double g = g_of_dims(config);
    const double ratio = static_cast<double>(config.M) / config.K;
    return std::expm1(ratio * std::log1p(p * config.N)) *
           std::exp(2.0 * kEulerGamma - g);
}

double required_q_approx(const AntennaConfig& config, double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("required_q_approx: p must be > 0");
    }
    const double mn = static_cast<double>(config.M) * config.N;
    return std::expm1(p * mn / config.K) / mn;
}

}  // namespace uavcap
