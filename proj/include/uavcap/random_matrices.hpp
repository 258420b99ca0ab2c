#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace uavcap {

using ComplexMatrix = Eigen::MatrixXcd;

// Antenna counts of the three hops (M user antennas, K relay antennas,
// N BTS antennas) plus the ordered dims L1 <= L2 <= L3 used by the
// permutation-invariant bounds.
struct AntennaConfig {
    int M;
    int K;
    int N;
    int L1;
    int L2;
    int L3;

    AntennaConfig(int users, int relay, int bts);
};

// Deterministic PCG32 stream keyed by (seed, stream_id). The stream id
// selects the sequence increment, so distinct ids give independent streams
// under one seed and the same key reproduces the same draws bit-exactly on
// any platform. One instance must not be shared across threads.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint32_t next_u32();

    // Uniform on the open interval (0, 1); never returns 0, so logs are safe.
    double next_uniform();

    // Circularly-symmetric complex Gaussian, total variance 1
    // (real and imaginary parts each N(0, 1/2)), via Box-Muller:
    // two uniforms u1, u2 -> sqrt(-ln u1) * (cos(2 pi u2) + i sin(2 pi u2)).
    std::complex<double> next_complex_gaussian();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
    std::uint64_t inc_;
};

// rows x cols i.i.d. CN(0, 1). Entries are drawn in row-major order; each
// entry consumes exactly two uniforms (magnitude then angle), which fixes
// the stream layout for bit-exact reproduction.
ComplexMatrix sample_gaussian_matrix(int rows, int cols, RandomStream& stream);

// One realization of the two-hop channel.
struct ChannelPair {
    ComplexMatrix Q1;  // K x M, users -> relay
    ComplexMatrix Q2;  // N x K, relay -> BTS
};

// Q1 is consumed from the stream before Q2.
ChannelPair sample_channel_pair(const AntennaConfig& config, RandomStream& stream);

// Sigma1 = Q1 Q1^H and Sigma2 = Q2^H Q2, both K x K Hermitian PSD
// (positive definite with probability 1 when K <= M and K <= N).
struct GramPair {
    ComplexMatrix Sigma1;
    ComplexMatrix Sigma2;
};

GramPair gram_pair(const ChannelPair& pair);

}  // namespace uavcap
