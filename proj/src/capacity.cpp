#include "uavcap/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace uavcap {

namespace {

// Smaller-side Gram matrix: A^H A or A A^H, whichever is square of the
// smaller dimension. det(I + c A^H A) = det(I + c A A^H).
ComplexMatrix small_gram(const ComplexMatrix& A) {
    if (A.cols() <= A.rows()) {
        return A.adjoint() * A;
    }
    return A * A.adjoint();
}

std::vector<double> psd_eigenvalues(const ComplexMatrix& A) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(A, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("psd_eigenvalues: eigensolver did not converge");
    }
    std::vector<double> out(static_cast<std::size_t>(A.rows()));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = std::max(0.0, solver.eigenvalues()[i]);
    }
    return out;
}

}  // namespace

double logdet_hpd(const ComplexMatrix& A) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument("logdet_hpd: matrix must be square");
    }
    Eigen::LLT<ComplexMatrix> llt(A);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("logdet_hpd: matrix is not positive definite");
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double d = llt.matrixLLT()(i, i).real();
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw std::runtime_error("logdet_hpd: nonpositive Cholesky pivot");
        }
        acc += std::log(d);
    }
    return 2.0 * acc;
}

double direct_capacity(const ComplexMatrix& H, double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("direct_capacity: p must be > 0");
    }
    const ComplexMatrix G = small_gram(H);
    const ComplexMatrix A =
        ComplexMatrix::Identity(G.rows(), G.cols()) + p * G;
    return logdet_hpd(A);
}

double product_capacity(const ChannelPair& pair, double q) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("product_capacity: q must be > 0");
    }
    const auto K = pair.Q1.rows();
    const auto M = pair.Q1.cols();
    const auto N = pair.Q2.rows();

    if (K < std::min(M, N)) {
        // det(I_M + q Q^H Q) = det(I_K + q Sigma1 Sigma2)
        //                    = det(I_K + q L^H Sigma2 L), Sigma1 = L L^H.
        const GramPair g = gram_pair(pair);
        Eigen::LLT<ComplexMatrix> llt(g.Sigma1);
        if (llt.info() == Eigen::Success) {
            const ComplexMatrix L = llt.matrixL();
            const ComplexMatrix A = ComplexMatrix::Identity(K, K) +
                                    q * (L.adjoint() * g.Sigma2 * L);
            const double v = logdet_hpd(A);
            if (std::isfinite(v)) {
                return v;
            }
        }
        // Singular Sigma1 (e.g. a zero channel): fall through to the full
        // form, which is positive definite for any Q.
    }

    const ComplexMatrix G = small_gram(pair.Q2 * pair.Q1);
    const ComplexMatrix A = ComplexMatrix::Identity(G.rows(), G.cols()) + q * G;
    return logdet_hpd(A);
}

std::vector<double> product_gram_eigenvalues(const ChannelPair& pair) {
    const auto K = pair.Q1.rows();
    const auto M = pair.Q1.cols();
    const auto N = pair.Q2.rows();

    if (K < std::min(M, N)) {
        const GramPair g = gram_pair(pair);
        Eigen::LLT<ComplexMatrix> llt(g.Sigma1);
        if (llt.info() == Eigen::Success) {
            const ComplexMatrix L = llt.matrixL();
            return psd_eigenvalues(L.adjoint() * g.Sigma2 * L);
        }
    }
    return psd_eigenvalues(small_gram(pair.Q2 * pair.Q1));
}

std::vector<double> direct_gram_eigenvalues(const ComplexMatrix& H) {
    return psd_eigenvalues(small_gram(H));
}

ErgodicEstimate ergodic_estimate(ChannelModel model, const AntennaConfig& config,
                                 double power, const MonteCarloSettings& mc) {
    if (mc.trials < 2) {
        throw std::invalid_argument("ergodic_estimate: trials must be >= 2");
    }
    if (!(power > 0.0)) {
        throw std::invalid_argument("ergodic_estimate: power must be > 0");
    }

    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t t = 0; t < mc.trials; ++t) {
        RandomStream stream(mc.seed, mc.stream_offset + static_cast<std::uint64_t>(t));
        double cap = 0.0;
        if (model == ChannelModel::direct) {
            const ComplexMatrix H = sample_gaussian_matrix(config.N, config.M, stream);
            cap = direct_capacity(H, power);
        } else {
            const ChannelPair pair = sample_channel_pair(config, stream);
            cap = product_capacity(pair, power);
        }
        const double delta = cap - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (cap - mean);
    }

    ErgodicEstimate est;
    est.mean_nats = mean;
    est.stderr_nats = std::sqrt(m2 / static_cast<double>(mc.trials - 1)) /
                      std::sqrt(static_cast<double>(mc.trials));
    est.trials = mc.trials;
    est.seed = mc.seed;
    return est;
}

}  // namespace uavcap
