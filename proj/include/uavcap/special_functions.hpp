#pragma once

#include <vector>

namespace uavcap {

// Euler-Mascheroni constant to 20 significant digits. Enters exp(2g - g(K))
// terms of the closed-form bounds, so it must not drift.
inline constexpr double kEulerGamma = 0.57721566490153286061;

// H_n = sum_{k=1}^{n} 1/k; H_0 = 0 (empty sum). Pure, exact at integers.
double harmonic(int n);

// psi(n) = -gamma + H_{n-1} for positive integer n. Throws std::domain_error
// for n <= 0; the identity only holds on the positive integers.
double digamma_int(int n);

// Associated Laguerre polynomial L_k^alpha(x), evaluated by the three-term
// recurrence (i+1) L_{i+1} = (2i+1+alpha-x) L_i - (i+alpha) L_{i-1}.
// Recurrence evaluation avoids the factorial overflow of the explicit sum.
double laguerre_assoc(int k, int alpha, double x);

// Gauss-Laguerre rule on [0, inf) against the weight e^{-x}.
// The weight is part of the rule: integrands passed to integrate() must NOT
// include the exponential factor.
struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing, all > 0
    std::vector<double> weights;  // all > 0
    int order = 0;

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (int i = 0; i < order; ++i) {
            acc += weights[i] * f(nodes[i]);
        }
        return acc;
    }
};

// Golub-Welsch construction: exact for polynomials of degree <= 2*order - 1.
// Throws std::runtime_error when the symmetric eigensolve fails or the
// resulting nodes/weights are not valid at working precision (order too
// large for double).
QuadratureRule gauss_laguerre_rule(int order);

}  // namespace uavcap
