#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "uavcap/capacity.hpp"
#include "uavcap/precoding.hpp"

using namespace uavcap;

namespace {

ChannelPair sample(const AntennaConfig& config, std::uint64_t seed, std::uint64_t id = 0) {
    RandomStream s(seed, id);
    return sample_channel_pair(config, s);
}

// Brute-force water-filling oracle: grid search over d1 for two modes.
std::vector<double> grid_search_two_modes(double g1, double g2, double total) {
    double best = -1.0;
    double best_d1 = 0.0;
    for (double d1 = 0.0; d1 <= total + 1e-12; d1 += 1e-4) {
        const double value = std::log1p(d1 * g1) + std::log1p((total - d1) * g2);
        if (value > best) {
            best = value;
            best_d1 = d1;
        }
    }
    return {best_d1, total - best_d1};
}

}  // namespace

TEST_CASE("spectra: rank-1 grams and trace identity") {
    const AntennaConfig keyhole(4, 1, 16);
    const ChannelPair pair = sample(keyhole, 3);
    const EigenSpectra sp = spectra(pair);
    REQUIRE(sp.lambda1.size() == 1);
    CHECK(sp.lambda1[0] == doctest::Approx(pair.Q1.squaredNorm()).epsilon(1e-12));
    CHECK(sp.lambda2[0] == doctest::Approx(pair.Q2.squaredNorm()).epsilon(1e-12));

    const AntennaConfig config(5, 3, 7);
    const ChannelPair pair2 = sample(config, 4);
    const EigenSpectra sp2 = spectra(pair2);
    const double sum1 = std::accumulate(sp2.lambda1.begin(), sp2.lambda1.end(), 0.0);
    CHECK(sum1 == doctest::Approx(pair2.Q1.squaredNorm()).epsilon(1e-9));
    CHECK(std::is_sorted(sp2.lambda1.rbegin(), sp2.lambda1.rend()));
    CHECK(std::is_sorted(sp2.lambda2.rbegin(), sp2.lambda2.rend()));
}

TEST_CASE("spectra: trailing zeros when K exceeds M") {
    const AntennaConfig config(2, 5, 7);  // K = 5 > M = 2
    const EigenSpectra sp = spectra(sample(config, 9));
    REQUIRE(sp.lambda1.size() == 5);
    for (std::size_t i = 2; i < 5; ++i) {
        CHECK(sp.lambda1[i] == doctest::Approx(0.0).epsilon(1e-10));
    }
    for (const double v : sp.lambda1) {
        CHECK(v >= 0.0);
    }
}

TEST_CASE("product capacity equals the paired-eigenvalue sum over Sigma1 Sigma2") {
    const AntennaConfig config(4, 2, 16);
    const ChannelPair pair = sample(config, 5);
    const double q = 0.6;
    const std::vector<double> mu = product_gram_eigenvalues(pair);
    double expected = 0.0;
    for (const double m : mu) {
        expected += std::log1p(q * m);
    }
    CHECK(product_capacity(pair, q) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("optimal_precoder: direct evaluation of the precoded log-det") {
    const AntennaConfig config(4, 3, 8);
    const double q = 0.75;
    for (std::uint64_t id = 0; id < 25; ++id) {
        const ChannelPair pair = sample(config, 6, id);
        PowerAllocation alloc{{1.2, 0.9, 0.9}};
        const ComplexMatrix P = optimal_precoder(pair, alloc);

        // capacity computed from raw matrices with the precoder inserted
        const ComplexMatrix G = pair.Q2 * P * pair.Q1;
        const double raw = logdet_hpd(ComplexMatrix::Identity(4, 4) +
                                      q * (G.adjoint() * G));

        const EigenSpectra sp = spectra(pair);
        double closed = 0.0;
        for (int k = 0; k < 3; ++k) {
            closed += std::log1p(q * alloc.d[k] * sp.lambda1[k] * sp.lambda2[k]);
        }
        CHECK(raw == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("optimal_precoder: unitary-diagonal structure") {
    const AntennaConfig config(4, 3, 8);
    const ChannelPair pair = sample(config, 7);
    PowerAllocation alloc{{1.5, 1.0, 0.5}};
    const ComplexMatrix P = optimal_precoder(pair, alloc);

    // singular values of P are sqrt(d_k)
    Eigen::JacobiSVD<ComplexMatrix> svd(P);
    std::vector<double> sv(svd.singularValues().data(),
                           svd.singularValues().data() + 3);
    std::vector<double> expected = {std::sqrt(1.5), std::sqrt(1.0), std::sqrt(0.5)};
    for (int i = 0; i < 3; ++i) {
        CHECK(sv[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    }

    // scalar case: P is the unit-modulus phase, capacity unchanged
    const AntennaConfig keyhole(2, 1, 2);
    const ChannelPair kp = sample(keyhole, 8);
    const ComplexMatrix Pk = optimal_precoder(kp, PowerAllocation{{1.0}});
    CHECK(std::abs(Pk(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix Gk = kp.Q2 * Pk * kp.Q1;
    const double with_precoder =
        logdet_hpd(ComplexMatrix::Identity(2, 2) + 1.0 * (Gk.adjoint() * Gk));
    CHECK(with_precoder == doctest::Approx(product_capacity(kp, 1.0)).epsilon(1e-9));

    CHECK_THROWS_AS(optimal_precoder(kp, PowerAllocation{{1.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_precoder(kp, PowerAllocation{{-1.0}}),
                    std::invalid_argument);
}

TEST_CASE("water_fill: trivial and symmetric cases") {
    const PowerAllocation single = water_fill({2.5}, 1.0);
    REQUIRE(single.d.size() == 1);
    CHECK(single.d[0] == doctest::Approx(1.0).epsilon(1e-12));

    const PowerAllocation equal = water_fill({3.0, 3.0}, 2.0);
    CHECK(equal.d[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(equal.d[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("water_fill: KKT oracle for gains {1, 4}") {
    // mu = (2 + 1 + 1/4) / 2 = 1.625 -> d = {0.625, 1.375}
    const PowerAllocation alloc = water_fill({1.0, 4.0}, 2.0);
    CHECK(alloc.d[0] == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(alloc.d[1] == doctest::Approx(1.375).epsilon(1e-12));

    const std::vector<double> grid = grid_search_two_modes(1.0, 4.0, 2.0);
    CHECK(alloc.d[0] == doctest::Approx(grid[0]).epsilon(1e-3));
    CHECK(alloc.d[1] == doctest::Approx(grid[1]).epsilon(1e-3));
}

TEST_CASE("water_fill: inactive weak modes and zero gains") {
    // strong gain soaks up everything when the weak mode is below water
    const PowerAllocation alloc = water_fill({100.0, 0.01, 0.0}, 0.5);
    CHECK(alloc.d[2] == 0.0);
    CHECK(alloc.d[1] == 0.0);  // 1/0.01 = 100 > mu
    CHECK(alloc.d[0] == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(water_fill({0.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(water_fill({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(water_fill({}, 1.0), std::invalid_argument);
}

TEST_CASE("water_fill: allocation invariants on random gains") {
    RandomStream s(100, 0);
    for (int rep = 0; rep < 2000; ++rep) {
        std::vector<double> gains(4);
        for (double& g : gains) {
            g = -std::log(s.next_uniform());  // Exp(1) gains
        }
        if (rep % 7 == 0) {
            gains[rep % 4] = 0.0;
        }
        const double total = 4.0;
        const PowerAllocation alloc = water_fill(gains, total);
        double sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(alloc.d[i] >= 0.0);
            if (gains[i] == 0.0) {
                CHECK(alloc.d[i] == 0.0);
            }
            sum += alloc.d[i];
        }
        CHECK(sum == doctest::Approx(total).epsilon(1e-9 / total));
    }
}

TEST_CASE("precoded_ergodic: equal allocation at K=1 is the unprecoded capacity") {
    const AntennaConfig keyhole(3, 1, 5);
    const MonteCarloSettings mc{3000, 21};
    const ErgodicEstimate eq =
        precoded_ergodic(keyhole, 0.8, AllocationRule::equal, mc);
    const ErgodicEstimate un = ergodic_estimate(ChannelModel::product, keyhole, 0.8, mc);
    CHECK(eq.mean_nats == doctest::Approx(un.mean_nats).epsilon(1e-10));
}

TEST_CASE("precoded_ergodic: water-filling dominates equal allocation") {
    const AntennaConfig config(10, 4, 32);
    const MonteCarloSettings mc{2000, 22};
    const double q = 0.01;
    const ErgodicEstimate wf =
        precoded_ergodic(config, q, AllocationRule::water_filling, mc);
    const ErgodicEstimate eq = precoded_ergodic(config, q, AllocationRule::equal, mc);
    CHECK(wf.mean_nats >= eq.mean_nats - 1e-12);  // pathwise dominance, shared draws
}

TEST_CASE("precoded_ergodic: equal allocation beats unprecoded at low SNR") {
    const AntennaConfig config(10, 4, 32);
    const MonteCarloSettings mc{20000, 23};
    const double q = 0.002;
    const ErgodicEstimate eq = precoded_ergodic(config, q, AllocationRule::equal, mc);
    const ErgodicEstimate un = ergodic_estimate(ChannelModel::product, config, q, mc);
    const double se = std::hypot(eq.stderr_nats, un.stderr_nats);
    CHECK(eq.mean_nats >= un.mean_nats - 2.0 * se);
}

TEST_CASE("minimum-pairing lower bound under equal allocation") {
    // mean of sum ln(1+q l1_k l2_k) >= L1 * mean ln(1+q l1_min l2_min),
    // where min is the L1-th descending eigenvalue of each side.
    const AntennaConfig config(4, 3, 8);
    const double q = 0.5;
    const int trials = 20000;
    double lhs = 0.0, rhs = 0.0;
    for (int t = 0; t < trials; ++t) {
        const ChannelPair pair = sample(config, 24, static_cast<std::uint64_t>(t));
        const EigenSpectra sp = spectra(pair);
        for (int k = 0; k < config.K; ++k) {
            lhs += std::log1p(q * sp.lambda1[k] * sp.lambda2[k]);
        }
        rhs += config.L1 *
               std::log1p(q * sp.lambda1[config.L1 - 1] * sp.lambda2[config.L1 - 1]);
    }
    CHECK(lhs / trials >= rhs / trials);  // pathwise, no slack needed
}

TEST_CASE("eigen_density: gamma special case at L1=1") {
    // (1, M): lambda^{M-1} e^{-lambda} / (M-1)!
    for (const double lam : {0.1, 1.0, 4.0, 11.0}) {
        const double expected = std::pow(lam, 3) * std::exp(-lam) / 6.0;
        CHECK(eigen_density(lam, 1, 4) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("eigen_density: normalization and mean under quadrature") {
    const QuadratureRule rule = gauss_laguerre_rule(96);
    for (const auto& [L1, Lo] : std::vector<std::pair<int, int>>{
             {1, 4}, {2, 4}, {3, 8}, {4, 16}}) {
        const double mass = rule.integrate(
            [&](double x) { return eigen_density_weightless(x, L1, Lo); });
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        const double mean = rule.integrate(
            [&](double x) { return x * eigen_density_weightless(x, L1, Lo); });
        CHECK(mean == doctest::Approx(static_cast<double>(Lo)).epsilon(1e-6 / Lo));
    }
}

TEST_CASE("eigen_density: normalizes for every (L1 <= 4, L2 <= 8)") {
    const QuadratureRule rule = gauss_laguerre_rule(96);
    for (int L1 = 1; L1 <= 4; ++L1) {
        for (int L2 = L1; L2 <= 8; ++L2) {
            const double mass = rule.integrate(
                [&](double x) { return eigen_density_weightless(x, L1, L2); });
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("eigen_density: nonnegative on a dense grid") {
    for (const auto& [L1, Lo] : std::vector<std::pair<int, int>>{
             {1, 4}, {2, 4}, {3, 8}, {4, 16}}) {
        for (int i = 0; i <= 2000; ++i) {
            const double lam = 50.0 * i / 2000.0;
            CHECK(eigen_density(lam, L1, Lo) >= 0.0);
        }
    }
    CHECK_THROWS_AS(eigen_density(-0.5, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(eigen_density(1.0, 4, 2), std::invalid_argument);
}

TEST_CASE("integral_lower_bound: vanishing power and keyhole Monte Carlo") {
    const AntennaConfig keyhole(4, 1, 16);
    const QuadratureRule rule = gauss_laguerre_rule(96);
    CHECK(integral_lower_bound(keyhole, 1e-14, rule) < 1e-10);

    // keyhole oracle: E[ln(1 + G1 G2)], G1 ~ Gamma(4,1), G2 ~ Gamma(16,1)
    const int draws = 200000;
    double mean = 0.0, m2 = 0.0;
    RandomStream s(26, 0);
    for (int t = 0; t < draws; ++t) {
        double g1 = 0.0, g2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            g1 -= std::log(s.next_uniform());
        }
        for (int i = 0; i < 16; ++i) {
            g2 -= std::log(s.next_uniform());
        }
        const double v = std::log1p(g1 * g2);
        const double delta = v - mean;
        mean += delta / (t + 1);
        m2 += delta * (v - mean);
    }
    const double se = std::sqrt(m2 / (draws - 1)) / std::sqrt(draws);
    const double quad = integral_lower_bound(keyhole, 1.0, rule);
    CHECK(std::abs(quad - mean) < 3.0 * se + 1e-6);
    // frozen 30-digit oracle value of the double integral
    CHECK(quad == doctest::Approx(4.01897376455).epsilon(1e-8));
}

TEST_CASE("integral_lower_bound: quadrature stabilization") {
    const AntennaConfig keyhole(4, 1, 16);
    const double v32 = integral_lower_bound(keyhole, 1.0, gauss_laguerre_rule(32));
    const double v64 = integral_lower_bound(keyhole, 1.0, gauss_laguerre_rule(64));
    const double v96 = integral_lower_bound(keyhole, 1.0, gauss_laguerre_rule(96));
    CHECK(v32 >= 0.0);
    CHECK(v64 >= v32);  // nondecreasing toward the limit for this integrand
    CHECK(v96 >= v64);
    CHECK(std::abs(v96 - v64) <= 1e-8);

    // default-order overload embeds the 64/96 check
    CHECK(integral_lower_bound(keyhole, 1.0) == doctest::Approx(v96).epsilon(1e-14));

    const AntennaConfig wide(10, 4, 32);
    const double w64 = integral_lower_bound(wide, 0.1, gauss_laguerre_rule(64));
    const double w96 = integral_lower_bound(wide, 0.1, gauss_laguerre_rule(96));
    CHECK(std::abs(w96 - w64) <= 1e-8);
}
