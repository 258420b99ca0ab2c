#include "uavcap/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace uavcap {

double harmonic(int n) {
    if (n < 0) {
        throw std::domain_error("harmonic: n must be >= 0");
    }
    // Sum smallest terms first so the partial sums stay well conditioned.
    double acc = 0.0;
    for (int k = n; k >= 1; --k) {
        acc += 1.0 / static_cast<double>(k);
    }
    return acc;
}

double digamma_int(int n) {
    if (n <= 0) {
        throw std::domain_error("digamma_int: n must be a positive integer");
    }
    return -kEulerGamma + harmonic(n - 1);
}

double laguerre_assoc(int k, int alpha, double x) {
    if (k < 0 || alpha < 0) {
        throw std::domain_error("laguerre_assoc: k and alpha must be >= 0");
    }
    double lm1 = 1.0;  // L_0^alpha
    if (k == 0) {
        return lm1;
    }
    double l = 1.0 + alpha - x;  // L_1^alpha
    for (int i = 1; i < k; ++i) {
        const double lp1 = ((2.0 * i + 1.0 + alpha - x) * l - (i + alpha) * lm1) / (i + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

QuadratureRule gauss_laguerre_rule(int order) {
    if (order < 1) {
        throw std::domain_error("gauss_laguerre_rule: order must be >= 1");
    }

    // Newton iteration on the zeros of L_n, weights from the recurrence
    // neighbour: w_i = x_i / (n L_{n-1}(x_i))^2 * n. Both the nodes and the
    // exponentially small large-node weights come out to relative precision,
    // which a tridiagonal eigensolve does not deliver (its tiny first
    // eigenvector components only carry absolute accuracy).
    const int n = order;
    QuadratureRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    constexpr int kMaxIterations = 200;
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest style initial guesses, refined by Newton.
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
        }

        double p1 = 1.0;
        double p2 = 0.0;
        bool converged = false;
        for (int it = 0; it < kMaxIterations && !converged; ++it) {
            p1 = 1.0;
            p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
            }
            // L_n'(z) = n (L_n(z) - L_{n-1}(z)) / z
            const double pp = n * (p1 - p2) / z;
            const double z_old = z;
            z = z_old - p1 / pp;
            if (!std::isfinite(z)) {
                throw std::runtime_error(
                    "gauss_laguerre_rule: node iteration diverged "
                    "(order too large for double precision)");
            }
            converged = std::abs(z - z_old) <= 1e-14 * std::max(1.0, std::abs(z));
        }
        if (!converged) {
            throw std::runtime_error(
                "gauss_laguerre_rule: node iteration did not converge "
                "(order too large for double precision)");
        }
        rule.nodes[i] = z;
        const double denom = static_cast<double>(n) * p2;
        rule.weights[i] = z / (denom * denom);
    }

    for (int i = 0; i < n; ++i) {
        if (!(rule.nodes[i] > 0.0) || !(rule.weights[i] > 0.0) ||
            (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))) {
            throw std::runtime_error(
                "gauss_laguerre_rule: invalid nodes or weights at this order "
                "(double-precision range exhausted)");
        }
    }
    return rule;
}

}  // namespace uavcap
