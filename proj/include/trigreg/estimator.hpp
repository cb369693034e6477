#pragma once

#include "trigreg/basis.hpp"
#include "trigreg/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace trigreg {

struct DatasetMeta {
    double noise_std = 0.0;
    double snr = 0.0;
    std::uint64_t seed = 0;
};

// N input/output pairs; meta records how synthetic data were generated
struct Dataset {
    std::vector<double> xs;
    std::vector<double> ys;
    std::optional<DatasetMeta> meta;

    int size() const { return static_cast<int>(xs.size()); }

    void validate() const {
        if (xs.size() != ys.size())
            throw std::invalid_argument("Dataset: xs and ys must have equal length");
        if (xs.empty()) throw std::invalid_argument("Dataset: need at least one point");
    }
};

struct FitResult {
    Eigen::VectorXd alpha_hat;
    double gamma = 0.0;
    SpectralFunction f_z;
};

inline Eigen::MatrixXd feature_matrix(const HypothesisSpace& hs,
                                      const std::vector<double>& xs) {
    Eigen::MatrixXd phi(static_cast<int>(xs.size()), hs.feature_count());
    for (int t = 0; t < static_cast<int>(xs.size()); ++t)
        phi.row(t) = hs.eval_features(xs[t]).transpose();
    return phi;
}

// Ridge solution in coordinates: (Phi'Phi/N + gamma*Sigma^-1) alpha = Phi'Y/N.
// This E x E route is the default estimator; the kernel route below is the
// N x N oracle for cross-checking.
inline FitResult fit_ridge(const HypothesisSpace& hs, const Dataset& d, double gamma) {
    d.validate();
    if (!(gamma > 0.0)) throw std::invalid_argument("fit_ridge: gamma must be positive");
    const int n = d.size();
    const Eigen::MatrixXd phi = feature_matrix(hs, d.xs);
    const Eigen::Map<const Eigen::VectorXd> y(d.ys.data(), n);
    Eigen::MatrixXd lhs = phi.transpose() * phi / n;
    for (int i = 0; i < hs.feature_count(); ++i) lhs(i, i) += gamma / hs.lambdas()[i];
    const Eigen::VectorXd rhs = phi.transpose() * y / n;
    Eigen::LLT<Eigen::MatrixXd> llt(lhs);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("fit_ridge: SPD factorization failed");
    Eigen::VectorXd alpha = llt.solve(rhs);
    return {alpha, gamma, function_from_alpha(hs, alpha)};
}

// Representer-form solve: (K + N*gamma*I) c = Y, alpha_i = lambda_i (Phi'c)_i
inline FitResult fit_kernel_oracle(const HypothesisSpace& hs, const Dataset& d,
                                   double gamma, int n_cap = 5000) {
    d.validate();
    if (!(gamma > 0.0)) throw std::invalid_argument("fit_kernel_oracle: gamma must be positive");
    const int n = d.size();
    if (n > n_cap)
        throw std::invalid_argument("fit_kernel_oracle: N exceeds the N x N route cap");
    const Eigen::MatrixXd phi = feature_matrix(hs, d.xs);
    const Eigen::Map<const Eigen::VectorXd> y(d.ys.data(), n);
    Eigen::MatrixXd gram(n, n);
    const Eigen::VectorXd lam =
        Eigen::Map<const Eigen::VectorXd>(hs.lambdas().data(), hs.feature_count());
    gram.noalias() = phi * lam.asDiagonal() * phi.transpose();
    gram.diagonal().array() += n * gamma;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("fit_kernel_oracle: factorization failed");
    const Eigen::VectorXd c = ldlt.solve(y);
    Eigen::VectorXd alpha = lam.asDiagonal() * (phi.transpose() * c);
    return {alpha, gamma, function_from_alpha(hs, alpha)};
}

// gamma = 0: minimum-norm least squares, singular values below
// 1e-10 * sigma_max treated as zero (the regularization-benefit study is
// deliberately underdetermined)
inline FitResult fit_unregularized(const HypothesisSpace& hs, const Dataset& d) {
    d.validate();
    const Eigen::MatrixXd phi = feature_matrix(hs, d.xs);
    const Eigen::Map<const Eigen::VectorXd> y(d.ys.data(), d.size());
    Eigen::BDCSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    Eigen::VectorXd alpha = svd.solve(y);
    return {alpha, 0.0, function_from_alpha(hs, alpha)};
}

// data-free limit: coefficient i is lambda_i/(lambda_i + gamma) * alpha_i^pi
inline SpectralFunction data_free_solution(const HypothesisSpace& hs,
                                           const SpectralFunction& f_rho, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("data_free_solution: gamma must be positive");
    const ProjectionSplit split = project(f_rho, hs);
    SpectralFunction out(f_rho.domain_width());
    for (int i = 0; i < hs.feature_count(); ++i) {
        const double l = hs.lambdas()[i];
        const double c = l / (l + gamma) * split.alpha_pi[i];
        if (c != 0.0) out.set(hs.feature_frequency(i), c);
    }
    return out;
}

struct TrueErrors {
    double sample = 0.0;   // ||f_z - f_H||
    double approx = 0.0;   // ||f_H - f_rho||
    double overall = 0.0;  // ||f_z - f_rho||
};

inline TrueErrors true_errors(const SpectralFunction& f_z, const SpectralFunction& f_h,
                              const SpectralFunction& f_rho) {
    return {(f_z - f_h).l2_norm(), (f_h - f_rho).l2_norm(), (f_z - f_rho).l2_norm()};
}

}  // namespace trigreg
