#pragma once

#include <cstdint>
#include <vector>

#include "uavcap/random_matrices.hpp"

namespace uavcap {

struct MonteCarloSettings {
    std::int64_t trials = 10000;
    std::uint64_t seed = 0;
    // Trial t draws from RandomStream(seed, stream_offset + t). Parameter
    // sweeps give each row a disjoint stream-id range through this offset;
    // the default 0 is the plain single-estimate layout.
    std::uint64_t stream_offset = 0;
};

struct ErgodicEstimate {
    double mean_nats = 0.0;
    double stderr_nats = 0.0;  // sample standard deviation / sqrt(trials)
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

enum class ChannelModel { direct, product };

// ln det(A) for Hermitian positive definite A, via Cholesky (never a raw
// determinant). Throws std::runtime_error when a pivot is <= 0.
double logdet_hpd(const ComplexMatrix& A);

// Direct link: ln det(I + p H^H H) in nats, H is N x M.
double direct_capacity(const ComplexMatrix& H, double p);

// Relayed link: ln det(I + q Q^H Q) with Q = Q2 Q1, in nats. When
// K < min(M, N) this is evaluated on the K x K Gram side through
// det(I + q Sigma1 Sigma2), symmetrized with the Cholesky factor of Sigma1.
double product_capacity(const ChannelPair& pair, double q);

// Eigenvalues of Q^H Q (equivalently the nonzero spectrum of Sigma1 Sigma2
// padded with zeros), ascending and clamped at 0. The per-realization
// capacity at power q is sum_i ln(1 + q mu_i); solvers reuse these to make
// the capacity a cheap deterministic function of the power.
std::vector<double> product_gram_eigenvalues(const ChannelPair& pair);
std::vector<double> direct_gram_eigenvalues(const ComplexMatrix& H);

// Monte Carlo mean and standard error of the per-realization capacity over
// `trials` independent draws, trial t on stream (seed, stream_offset + t).
// The reduction runs in trial order, so the result does not depend on any
// execution parallelism.
ErgodicEstimate ergodic_estimate(ChannelModel model, const AntennaConfig& config,
                                 double power, const MonteCarloSettings& mc);

}  // namespace uavcap
