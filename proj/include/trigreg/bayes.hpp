#pragma once

#include "trigreg/basis.hpp"
#include "trigreg/estimator.hpp"
#include "trigreg/rng.hpp"
#include "trigreg/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace trigreg {

struct GibbsConfig {
    int total_samples = 1500;  // N_G
    int keep_last = 1000;      // N_g, the tail used for gamma-hat
    double init_gamma = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (total_samples < 1) throw std::invalid_argument("GibbsConfig: total_samples < 1");
        if (keep_last < 1 || keep_last > total_samples)
            throw std::invalid_argument("GibbsConfig: need 1 <= keep_last <= total_samples");
        if (!(init_gamma > 0.0)) throw std::invalid_argument("GibbsConfig: init_gamma <= 0");
    }
};

struct GibbsTrace {
    std::vector<double> gamma_samples;
    std::vector<Eigen::VectorXd> alpha_samples;
    std::vector<double> neg_log_evidence;
};

namespace detail {

// shared per-dataset quantities for the evidence and the Gibbs sweep
struct BayesWorkspace {
    Eigen::MatrixXd phi;
    Eigen::MatrixXd phi_t_phi;
    Eigen::VectorXd phi_t_y;
    double y_dot_y = 0.0;
    Eigen::VectorXd sigma_tilde_inv_diag;  // N / lambda_i
    double logdet_sigma_tilde = 0.0;       // sum log(lambda_i / N)
    int n = 0;
    int e = 0;

    BayesWorkspace(const HypothesisSpace& hs, const Dataset& d) {
        d.validate();
        n = d.size();
        e = hs.feature_count();
        phi = feature_matrix(hs, d.xs);
        const Eigen::Map<const Eigen::VectorXd> y(d.ys.data(), n);
        phi_t_phi = phi.transpose() * phi;
        phi_t_y = phi.transpose() * y;
        y_dot_y = y.dot(y);
        sigma_tilde_inv_diag.resize(e);
        logdet_sigma_tilde = 0.0;
        for (int i = 0; i < e; ++i) {
            sigma_tilde_inv_diag[i] = n / hs.lambdas()[i];
            logdet_sigma_tilde += std::log(hs.lambdas()[i] / n);
        }
    }

    // Y' Sigma_Y^-1 Y + log det Sigma_Y with Sigma_Y = sigma^2 (I + Phi SigmaTilde Phi'/gamma),
    // evaluated through the E x E matrix W = gamma SigmaTilde^-1 + Phi'Phi
    double neg_log_evidence(double gamma, double sigma2) const {
        Eigen::MatrixXd w = phi_t_phi;
        w.diagonal() += gamma * sigma_tilde_inv_diag;
        Eigen::LLT<Eigen::MatrixXd> llt(w);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("neg_log_evidence: factorization failed");
        const double quad = (y_dot_y - phi_t_y.dot(llt.solve(phi_t_y))) / sigma2;
        double logdet_w = 0.0;
        for (int i = 0; i < e; ++i) logdet_w += 2.0 * std::log(llt.matrixL()(i, i));
        const double logdet =
            n * std::log(sigma2) + logdet_sigma_tilde - e * std::log(gamma) + logdet_w;
        const double value = quad + logdet;
        if (!std::isfinite(value))
            throw std::runtime_error("neg_log_evidence: non-finite value");
        return value;
    }
};

}  // namespace detail

// Negative log evidence of the Bayesian model behind the ridge estimate:
// Y'Sigma_Y^-1 Y + log det Sigma_Y, Sigma_Y = Phi P Phi'/N + sigma^2 I with
// P^-1 = gamma Sigma_alpha^-1 / sigma^2. Uses the Woodbury route; no N x N
// matrix is formed.
inline double neg_log_evidence(const HypothesisSpace& hs, const Dataset& d, double gamma,
                               double sigma2) {
    if (!(gamma > 0.0) || !(sigma2 > 0.0))
        throw std::invalid_argument("neg_log_evidence: gamma and sigma2 must be positive");
    return detail::BayesWorkspace(hs, d).neg_log_evidence(gamma, sigma2);
}

// One exact draw from alpha | gamma, Y. Exposed so the conditional can be
// validated against its closed form in isolation.
inline Eigen::VectorXd sample_alpha_conditional(const HypothesisSpace& hs, const Dataset& d,
                                                double gamma, Rng& rng) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("sample_alpha_conditional: gamma must be positive");
    const detail::BayesWorkspace ws(hs, d);
    Eigen::MatrixXd prec = ws.phi_t_phi / gamma;
    prec.diagonal() += ws.sigma_tilde_inv_diag;
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("sample_alpha_conditional: factorization failed");
    const Eigen::VectorXd mean = llt.solve(ws.phi_t_y / gamma);
    Eigen::VectorXd z(ws.e);
    for (int i = 0; i < ws.e; ++i) z[i] = rng.normal();
    return mean + llt.matrixL().transpose().solve(z);
}

// Two-block Gibbs sampler on (alpha, gamma) with the exact conditionals
//   alpha | gamma ~ N((SigmaTilde^-1 + Phi'Phi/gamma)^-1 Phi'Y/gamma, (SigmaTilde^-1 + Phi'Phi/gamma)^-1)
//   gamma | alpha ~ Gamma(N/2, ||Y - Phi alpha||^2 / 2)   (shape/rate)
// sigma2 enters only the recorded evidence values; it defaults to the
// dataset's generative noise variance.
inline GibbsTrace gibbs_run(const HypothesisSpace& hs, const Dataset& d, const GibbsConfig& cfg,
                            std::optional<double> sigma2_opt = std::nullopt) {
    cfg.validate();
    double sigma2 = 0.0;
    if (sigma2_opt) {
        sigma2 = *sigma2_opt;
    } else if (d.meta && d.meta->noise_std > 0.0) {
        sigma2 = d.meta->noise_std * d.meta->noise_std;
    } else {
        throw std::invalid_argument("gibbs_run: sigma2 not given and dataset carries no noise metadata");
    }
    if (!(sigma2 > 0.0)) throw std::invalid_argument("gibbs_run: sigma2 must be positive");

    const detail::BayesWorkspace ws(hs, d);
    const Eigen::Map<const Eigen::VectorXd> y(d.ys.data(), ws.n);
    Rng rng(cfg.seed);
    GibbsTrace trace;
    trace.gamma_samples.reserve(cfg.total_samples);
    trace.alpha_samples.reserve(cfg.total_samples);
    trace.neg_log_evidence.reserve(cfg.total_samples);

    double gamma = cfg.init_gamma;
    Eigen::VectorXd z(ws.e);
    for (int k = 0; k < cfg.total_samples; ++k) {
        // alpha block: precision A = SigmaTilde^-1 + Phi'Phi/gamma
        Eigen::MatrixXd prec = ws.phi_t_phi / gamma;
        prec.diagonal() += ws.sigma_tilde_inv_diag;
        Eigen::LLT<Eigen::MatrixXd> llt(prec);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("gibbs_run: precision factorization failed");
        const Eigen::VectorXd mean = llt.solve(ws.phi_t_y / gamma);
        for (int i = 0; i < ws.e; ++i) z[i] = rng.normal();
        // x = mean + L^-T z has covariance A^-1
        const Eigen::VectorXd alpha =
            mean + llt.matrixL().transpose().solve(z);

        const double resid2 = (y - ws.phi * alpha).squaredNorm();
        if (resid2 <= 0.0)
            throw std::runtime_error("gibbs_run: exactly zero residual, gamma conditional degenerate");
        gamma = rng.gamma(ws.n / 2.0, resid2 / 2.0);

        trace.alpha_samples.push_back(alpha);
        trace.gamma_samples.push_back(gamma);
        trace.neg_log_evidence.push_back(ws.neg_log_evidence(gamma, sigma2));
    }
    return trace;
}

// gamma-hat: among the last keep_last samples, the gamma whose recorded
// negative log evidence is smallest
inline double gamma_hat_gibbs(const GibbsTrace& trace, const GibbsConfig& cfg) {
    const int total = static_cast<int>(trace.gamma_samples.size());
    if (total == 0) throw std::invalid_argument("gamma_hat_gibbs: empty trace");
    if (total < cfg.keep_last)
        throw std::invalid_argument("gamma_hat_gibbs: trace shorter than keep_last");
    int best = total - cfg.keep_last;
    for (int k = best + 1; k < total; ++k)
        if (trace.neg_log_evidence[k] < trace.neg_log_evidence[best]) best = k;
    return trace.gamma_samples[best];
}

// Expected parameter MSE M(gamma) = E_e ||alpha_hat - alpha_pi||^2 under
// y_t = phi(x_t)'alpha_pi + r(x_t) + e_t with known noise variance:
//   M(gamma) = ||G^-1 (Phi'r - gamma SigmaTilde^-1 alpha_pi)||^2
//            + sigma^2 Tr(G^-1 Phi'Phi G^-1),  G = gamma SigmaTilde^-1 + Phi'Phi.
// gamma = 0 requires Phi to have full column rank.
inline double expected_param_mse(const HypothesisSpace& hs, const std::vector<double>& xs,
                                 const SpectralFunction& f_rho, double sigma2, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("expected_param_mse: gamma must be >= 0");
    if (sigma2 < 0.0) throw std::invalid_argument("expected_param_mse: sigma2 must be >= 0");
    if (xs.empty()) throw std::invalid_argument("expected_param_mse: no inputs");
    const int n = static_cast<int>(xs.size());
    const int e = hs.feature_count();
    const Eigen::MatrixXd phi = feature_matrix(hs, xs);
    const ProjectionSplit split = project(f_rho, hs);
    // residual of the frequencies left out of the space
    Eigen::VectorXd r(n);
    for (int t = 0; t < n; ++t)
        r[t] = f_rho.eval(xs[t]) - phi.row(t).dot(split.alpha_pi);

    Eigen::MatrixXd g = phi.transpose() * phi;
    Eigen::VectorXd bias_rhs = phi.transpose() * r;
    if (gamma > 0.0) {
        for (int i = 0; i < e; ++i) {
            const double sti = n / hs.lambdas()[i];
            g(i, i) += gamma * sti;
            bias_rhs[i] -= gamma * sti * split.alpha_pi[i];
        }
        Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("expected_param_mse: factorization failed");
        const Eigen::VectorXd bias = llt.solve(bias_rhs);
        const Eigen::MatrixXd ginv_pt = llt.solve(phi.transpose());
        return bias.squaredNorm() + sigma2 * ginv_pt.squaredNorm();
    }
    // gamma = 0: M(0) = ||(Phi'Phi)^-1 Phi'r||^2 + sigma^2 Tr((Phi'Phi)^-1)
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (lu.rank() < e)
        throw std::invalid_argument("expected_param_mse: Phi is rank deficient at gamma = 0");
    const Eigen::VectorXd bias = lu.solve(bias_rhs);
    const Eigen::MatrixXd ginv = lu.inverse();
    return bias.squaredNorm() + sigma2 * ginv.trace();
}

}  // namespace trigreg
