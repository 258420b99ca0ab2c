#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "uavcap/bounds.hpp"
#include "uavcap/capacity.hpp"

namespace uavcap {

struct MinQResult {
    std::optional<double> q_closed;  // closed-form value, defined for K <= M <= N
    double q_numeric = 0.0;
    double p = 0.0;
    AntennaConfig config;
    double tolerance_nats = 0.0;
    double direct_mean_nats = 0.0;   // R(p) reference the solver matched
    double direct_stderr_nats = 0.0;
};

// Minimal q with product-channel ergodic capacity equal to the direct-link
// ergodic capacity at p, found by bisection over a doubling bracket. All q
// values reuse the same channel draws (common random numbers): per-trial
// spectra are precomputed once, so S(q) is a deterministic strictly
// increasing function of q and the root-find terminates at the capacity-gap
// tolerance. Throws std::runtime_error if the bracket fails to enclose the
// root after 60 doublings.
MinQResult min_q_numeric(const AntennaConfig& config, double p,
                         const MonteCarloSettings& mc, double tol);

// Closed-form counterpart, identical to bounds::required_q_closed.
double min_q_closed(const AntennaConfig& config, double p);

struct K0Result {
    int K0 = 0;      // 0 when no increment ratio clears eta
    double eta = 0.0;
    double q_hat = 0.0;
    std::vector<std::pair<int, double>> ratios;  // (K, S(K+1)/S(K) - 1), K = 1..K_max
};

// Largest useful relay antenna count under the total power budget
// q_hat = q K: the lower-bound capacity S(K) is evaluated at q = q_hat / K
// for K = 1..K_max+1 and K0 is the largest K in [1, K_max] whose own
// increment over K-1 still clears eta, i.e.
// min(K_max, 1 + max{K : S(K+1)/S(K) - 1 >= eta}).
K0Result k0_optimize(int M, int N, double q_hat, double eta, int K_max);

}  // namespace uavcap
