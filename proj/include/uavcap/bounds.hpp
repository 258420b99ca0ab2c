#pragma once

#include "uavcap/random_matrices.hpp"

namespace uavcap {

enum class BoundKind { lower_product, upper_direct };

struct BoundReport {
    double value_nats;
    BoundKind kind;
    AntennaConfig config;
    double power;
};

// g of the general lower bound: (1/L1) sum_{l=1}^{L1} [H_{L2-l} + H_{L3-l}],
// invariant under permutations of (M, K, N) by construction. The K <= M
// special case and the general bound share this one code path.
double g_of_dims(const AntennaConfig& config);

// Product-channel ergodic capacity lower bound,
// L1 * ln(1 + q exp(g - 2 gamma)) in nats.
BoundReport lower_bound_product(const AntennaConfig& config, double q);

// Direct-link Jensen upper bound M * ln(1 + p N) in nats; tight for large N.
BoundReport upper_bound_direct(int M, int N, double p);

// Received-SNR comparison: true iff q K > p (strict).
bool snr_condition(double q, int K, double p);

// Minimal q at which the product lower bound meets the direct upper bound:
// ((1 + p N)^{M/K} - 1) * exp(2 gamma - g). Defined for K <= M <= N only;
// the direct link's (M, N) are not permutable with K, so configurations
// violating the ordering are rejected rather than silently reordered.
double required_q_closed(const AntennaConfig& config, double p);

// Large-(M, N) approximation of the same condition:
// (exp(p M N / K) - 1) / (M N). Reduces to the SNR condition q K > p as
// p M N -> 0.
double required_q_approx(const AntennaConfig& config, double p);

}  // namespace uavcap
