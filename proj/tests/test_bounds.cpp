#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "uavcap/bounds.hpp"
#include "uavcap/capacity.hpp"
#include "uavcap/special_functions.hpp"

using namespace uavcap;

TEST_CASE("g_of_dims: empty sums, harmonic composition, permutations") {
    CHECK(g_of_dims(AntennaConfig(1, 1, 1)) == 0.0);
    // frozen from the harmonic-sum oracle: H(3) + H(15)
    CHECK(g_of_dims(AntennaConfig(4, 1, 16)) ==
          doctest::Approx(5.1515623265623266).epsilon(1e-14));
    const double ref = g_of_dims(AntennaConfig(4, 1, 16));
    CHECK(g_of_dims(AntennaConfig(16, 4, 1)) == ref);
    CHECK(g_of_dims(AntennaConfig(1, 16, 4)) == ref);
}

TEST_CASE("lower_bound_product: frozen oracle values") {
    // ln(1 + e^{-2 gamma}) evaluated with gamma to 20 digits; the value is
    // 0.27401668873..., not the 0.2731319 sometimes quoted.
    CHECK(lower_bound_product(AntennaConfig(1, 1, 1), 1.0).value_nats ==
          doctest::Approx(0.27401668873044755).epsilon(1e-12));
    CHECK(lower_bound_product(AntennaConfig(4, 1, 16), 1.0).value_nats ==
          doctest::Approx(4.0153325999312561).epsilon(1e-12));
    CHECK(lower_bound_product(AntennaConfig(4, 1, 16), 1e-12).value_nats <
          1e-9);  // q -> 0+ vanishes
    CHECK_THROWS_AS(lower_bound_product(AntennaConfig(1, 1, 1), 0.0),
                    std::invalid_argument);
}

TEST_CASE("lower_bound_product: exact permutation invariance") {
    const int dims[3] = {2, 3, 5};
    const double q = 0.7;
    const double ref = lower_bound_product(AntennaConfig(2, 3, 5), q).value_nats;
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& perm : perms) {
        const AntennaConfig config(dims[perm[0]], dims[perm[1]], dims[perm[2]]);
        CHECK(lower_bound_product(config, q).value_nats == ref);
    }
}

TEST_CASE("upper_bound_direct: arithmetic and vanishing limit") {
    CHECK(upper_bound_direct(4, 16, 1.0).value_nats ==
          doctest::Approx(4.0 * std::log(17.0)).epsilon(1e-14));
    CHECK(upper_bound_direct(4, 16, 1e-12).value_nats < 1e-9);
    CHECK_THROWS_AS(upper_bound_direct(4, 16, -1.0), std::invalid_argument);
}

TEST_CASE("upper_bound_direct: dominates the measured capacity at (4,16)") {
    const ErgodicEstimate r = ergodic_estimate(
        ChannelModel::direct, AntennaConfig(4, 1, 16), 1.0, MonteCarloSettings{4000, 61});
    CHECK(r.mean_nats <= upper_bound_direct(4, 16, 1.0).value_nats + 3.0 * r.stderr_nats);
}

TEST_CASE("snr_condition: strict inequality") {
    CHECK_FALSE(snr_condition(1.0, 1, 1.0));
    CHECK(snr_condition(0.3, 4, 1.0));
    CHECK_FALSE(snr_condition(0.25, 4, 1.0));  // boundary qK = p exactly
}

TEST_CASE("required_q_closed: frozen value and fixed-point identity") {
    const AntennaConfig config(4, 2, 16);
    const double p = 0.1;
    // frozen from the Eq. oracle: (2.6^2 - 1) exp(2 gamma - g(2,4,16))
    const double q = required_q_closed(config, p);
    CHECK(q == doctest::Approx(0.129225863982).epsilon(1e-9));
    CHECK(lower_bound_product(config, q).value_nats ==
          doctest::Approx(upper_bound_direct(4, 16, p).value_nats).epsilon(1e-9));
    CHECK(required_q_closed(config, 1e-14) < 1e-10);  // p -> 0+ vanishes
    CHECK_THROWS_AS(required_q_closed(AntennaConfig(4, 8, 16), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(required_q_closed(AntennaConfig(16, 2, 4), 0.1),
                    std::invalid_argument);
}

TEST_CASE("required_q_approx: small-power limit reduces to the SNR condition") {
    const AntennaConfig config(4, 2, 16);
    // p M N -> 0: approx -> p / K
    const double p = 1e-9;
    CHECK(required_q_approx(config, p) == doctest::Approx(p / 2.0).epsilon(1e-6));
}

TEST_CASE("required_q_approx: close to the closed form when N, M >> K") {
    const AntennaConfig config(64, 2, 64);
    const double p = 1e-4;
    const double approx = required_q_approx(config, p);
    const double closed = required_q_closed(config, p);
    CHECK(std::abs(approx / closed - 1.0) <= 0.15);
    CHECK(approx == doctest::Approx(5.548817981e-5).epsilon(1e-8));  // frozen oracle
}

TEST_CASE("required_q_approx: monotone in p, exponentially decreasing in K") {
    const AntennaConfig base(16, 2, 16);
    double prev = 0.0;
    for (const double p : {0.01, 0.1, 0.5, 1.0, 3.0}) {
        const double v = required_q_approx(base, p);
        CHECK(v > prev);
        prev = v;
    }
    // decreasing in K, and ln(MN * approx) tracks pMN/K once pMN/K is large
    const double p = 1.0;
    const double mn = 16.0 * 16.0;
    double prev_q = 1e300;
    for (int K = 1; K <= 4; ++K) {
        const AntennaConfig config(16, K, 16);
        const double v = required_q_approx(config, p);
        CHECK(v < prev_q);
        prev_q = v;
        CHECK(std::abs(std::log(mn * v) - p * mn / K) < 1e-3);
    }
}

TEST_CASE("bound sandwich on a reduced grid (full grid in acceptance)") {
    const MonteCarloSettings mc{4000, 51};
    for (const int m : {1, 2}) {
        for (const int k : {1, 4}) {
            for (const int n : {2, 4}) {
                const AntennaConfig config(m, k, n);
                for (const double power : {0.1, 1.0, 10.0}) {
                    const ErgodicEstimate s =
                        ergodic_estimate(ChannelModel::product, config, power, mc);
                    CHECK(s.mean_nats >=
                          lower_bound_product(config, power).value_nats -
                              3.0 * s.stderr_nats);
                    const ErgodicEstimate r =
                        ergodic_estimate(ChannelModel::direct, config, power, mc);
                    CHECK(r.mean_nats <=
                          upper_bound_direct(m, n, power).value_nats +
                              3.0 * r.stderr_nats);
                }
            }
        }
    }
}
