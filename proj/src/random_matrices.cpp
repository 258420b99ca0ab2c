#include "uavcap/random_matrices.hpp"

#include <cmath>
#include <stdexcept>

namespace uavcap {

AntennaConfig::AntennaConfig(int users, int relay, int bts)
    : M(users), K(relay), N(bts) {
    if (M < 1 || K < 1 || N < 1) {
        throw std::invalid_argument("AntennaConfig: antenna counts must be >= 1");
    }
    L1 = std::min(M, std::min(K, N));
    L3 = std::max(M, std::max(K, N));
    L2 = M + K + N - L1 - L3;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    inc_ = (stream_id << 1u) | 1u;
    state_ = 0;
    next_u32();
    state_ += seed;
    next_u32();
}

std::uint32_t RandomStream::next_u32() {
    const std::uint64_t oldstate = state_;
    state_ = oldstate * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((oldstate >> 18u) ^ oldstate) >> 27u);
    const auto rot = static_cast<std::uint32_t>(oldstate >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

double RandomStream::next_uniform() {
    constexpr double inv = 1.0 / 4294967296.0;  // 2^-32
    return (static_cast<double>(next_u32()) + 0.5) * inv;
}

std::complex<double> RandomStream::next_complex_gaussian() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double mag = std::sqrt(-std::log(u1));  // |z|^2 ~ Exp(1), so E|z|^2 = 1
    const double ang = 2.0 * M_PI * u2;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

ComplexMatrix sample_gaussian_matrix(int rows, int cols, RandomStream& stream) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("sample_gaussian_matrix: dims must be >= 1");
    }
    ComplexMatrix out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            out(r, c) = stream.next_complex_gaussian();
        }
    }
    return out;
}

ChannelPair sample_channel_pair(const AntennaConfig& config, RandomStream& stream) {
    ChannelPair pair;
    pair.Q1 = sample_gaussian_matrix(config.K, config.M, stream);
    pair.Q2 = sample_gaussian_matrix(config.N, config.K, stream);
    return pair;
}

GramPair gram_pair(const ChannelPair& pair) {
    if (pair.Q1.rows() != pair.Q2.cols()) {
        throw std::invalid_argument("gram_pair: inner dimension K does not match");
    }
    GramPair g;
    g.Sigma1 = pair.Q1 * pair.Q1.adjoint();
    g.Sigma2 = pair.Q2.adjoint() * pair.Q2;
    return g;
}

}  // namespace uavcap
