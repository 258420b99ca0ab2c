#pragma once

#include <vector>

#include "uavcap/capacity.hpp"
#include "uavcap/special_functions.hpp"

namespace uavcap {

// Per-eigenmode relay power multipliers; sum d_k equals the total budget
// (K for the relay's per-antenna normalization), every d_k >= 0.
struct PowerAllocation {
    std::vector<double> d;
};

// Eigenvalues of Sigma1 = Q1 Q1^H and Sigma2 = Q2^H Q2, descending and
// clamped at 0; the trailing K - M entries of lambda1 vanish when K > M
// (symmetrically for lambda2 with N).
struct EigenSpectra {
    std::vector<double> lambda1;
    std::vector<double> lambda2;
};

EigenSpectra spectra(const ChannelPair& pair);

// Relay precoder P = W2 D^{1/2} W1^H where W1, W2 diagonalize Sigma1 and
// Sigma2 with descending eigenvalue order. With it the relayed capacity
// becomes sum_k ln(1 + q d_k lambda1_k lambda2_k), the modes paired
// descending-descending.
ComplexMatrix optimal_precoder(const ChannelPair& pair, const PowerAllocation& alloc);

// Maximize sum_k ln(1 + d_k g_k) subject to sum d_k = total, d_k >= 0.
// Exact active-set solution of the KKT form d_k = max(0, mu - 1/g_k):
// gains sorted descending, active prefixes tried from the largest down,
// first prefix with all active d_k > 0 wins. Zero gains receive 0.
// Throws std::invalid_argument when every gain is zero.
PowerAllocation water_fill(const std::vector<double>& gains, double total);

enum class AllocationRule { water_filling, equal };

// Monte Carlo mean of the precoded capacity: per realization the mode gains
// are q lambda1_k lambda2_k, allocated either by water-filling (budget K)
// or equally (d_k = 1).
ErgodicEstimate precoded_ergodic(const AntennaConfig& config, double q,
                                 AllocationRule rule, const MonteCarloSettings& mc);

// Marginal eigenvalue pdf of an L1-dimensional complex Wishart matrix with
// Lother >= L1 degrees of freedom:
// (lambda^{Lother-L1} e^{-lambda} / L1)
//   * sum_{k=0}^{L1-1} k!/(k+Lother-L1)! [L_k^{Lother-L1}(lambda)]^2.
double eigen_density(double lambda, int L1, int Lother);

// The same density without its e^{-lambda} factor, for integration against
// Gauss-Laguerre rules (whose weight already carries the exponential).
double eigen_density_weightless(double lambda, int L1, int Lother);

// Double-integral lower bound
//   L1 * Int Int ln(1 + q l1 l2) p(l1) p(l2) dl1 dl2,
// with p(l1) the (L1, L2) marginal and p(l2) the (L1, L3) marginal,
// evaluated by a tensorized Gauss-Laguerre rule. The marginals are treated
// as independent exactly as the closed form is written; the bound is exact
// against the product-channel mean only in the keyhole case L1 = 1.
double integral_lower_bound(const AntennaConfig& config, double q,
                            const QuadratureRule& rule);

// Default order-96 rule with a 64/96 stabilization check; throws
// std::runtime_error if the two orders disagree by more than 1e-8.
double integral_lower_bound(const AntennaConfig& config, double q);

}  // namespace uavcap
