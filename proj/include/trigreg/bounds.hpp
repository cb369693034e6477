#pragma once

#include "trigreg/basis.hpp"
#include "trigreg/estimator.hpp"
#include "trigreg/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace trigreg {

// Everything the bound and selection formulas consume. B_f bounds the
// energy of the regression function, B_sigma the noise variance; alpha_pi
// and tail_energy come from projecting f_rho onto the hypothesis space.
struct BoundContext {
    double B_f = 0.0;
    double B_sigma = 0.0;
    int N = 1;
    double delta = 0.1;
    double C_K = 1.0;
    double lambda_min = 1.0;
    Eigen::VectorXd lambdas;
    Eigen::VectorXd alpha_pi;
    double tail_energy = 0.0;

    void validate() const {
        if (B_f < 0.0 || B_sigma < 0.0)
            throw std::invalid_argument("BoundContext: B_f and B_sigma must be >= 0");
        if (N < 1) throw std::invalid_argument("BoundContext: N must be >= 1");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("BoundContext: delta must lie in (0,1)");
        if (!(C_K > 0.0) || !(lambda_min > 0.0))
            throw std::invalid_argument("BoundContext: C_K and lambda_min must be positive");
        if (lambdas.size() != alpha_pi.size())
            throw std::invalid_argument("BoundContext: lambdas and alpha_pi length mismatch");
        if (tail_energy < 0.0) throw std::invalid_argument("BoundContext: tail_energy < 0");
    }

    // B_f and B_sigma default to the true simulation values; explicit
    // overrides cover the agnostic setting. use_ck_numeric swaps in the
    // grid supremum for sensitivity studies (paper reproduction keeps the
    // printed formula).
    static BoundContext from_truth(const HypothesisSpace& hs, const SpectralFunction& f_rho,
                                   int n, double delta,
                                   std::optional<double> b_f = std::nullopt,
                                   std::optional<double> b_sigma = std::nullopt,
                                   bool use_ck_numeric = false) {
        BoundContext ctx;
        ctx.N = n;
        ctx.delta = delta;
        ctx.C_K = use_ck_numeric ? hs.ck_numeric() : hs.ck_paper();
        ctx.lambda_min = hs.lambda_min();
        ctx.lambdas = Eigen::Map<const Eigen::VectorXd>(hs.lambdas().data(), hs.feature_count());
        const ProjectionSplit split = project(f_rho, hs);
        ctx.alpha_pi = split.alpha_pi;
        ctx.tail_energy = split.tail_energy;
        ctx.B_f = b_f.value_or(f_rho.l2_norm());
        ctx.B_sigma = b_sigma.value_or(0.0);
        ctx.validate();
        return ctx;
    }
};

// the gamma-independent factor of the sample bound; the A of the trade-off study
inline double tradeoff_coefficient_A(const BoundContext& ctx) {
    return std::pow(ctx.C_K, 3) *
           std::sqrt((ctx.B_f * ctx.B_f + ctx.B_sigma * ctx.B_sigma) /
                     (ctx.lambda_min * ctx.N * ctx.delta));
}

// sample error bound: with confidence at least 1-delta,
// ||f_z - f_H|| <= (C_K^3/gamma) sqrt((B_f^2+B_sigma^2)/(lambda_min*N*delta))
inline double sample_bound_theorem1(const BoundContext& ctx, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("sample_bound_theorem1: gamma must be > 0");
    return tradeoff_coefficient_A(ctx) / gamma;
}

// approximation bound (a): gamma/(lambda_min+gamma)*||alpha_pi||_2 + tail
inline double approx_bound_a(const BoundContext& ctx, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("approx_bound_a: gamma must be >= 0");
    return gamma / (ctx.lambda_min + gamma) * ctx.alpha_pi.norm() + ctx.tail_energy;
}

// approximation bound (b): ||alpha_pi||_inf * gamma * sum 1/lambda_i + tail
inline double approx_bound_b(const BoundContext& ctx, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("approx_bound_b: gamma must be >= 0");
    const double inf_norm = ctx.alpha_pi.size() ? ctx.alpha_pi.cwiseAbs().maxCoeff() : 0.0;
    return inf_norm * gamma * ctx.lambdas.cwiseInverse().sum() + ctx.tail_energy;
}

// D = sum_i ||alpha_pi||_inf / lambda_i, the slope of variant (b)
inline double tradeoff_coefficient_D(const BoundContext& ctx) {
    const double inf_norm = ctx.alpha_pi.size() ? ctx.alpha_pi.cwiseAbs().maxCoeff() : 0.0;
    return inf_norm * ctx.lambdas.cwiseInverse().sum();
}

// Minimizer of F(gamma) = A/gamma + B*gamma/(b+gamma) + C. A finite
// minimizer exists iff B*b - A > 0 (Descartes on the stationarity
// quadratic); absence is a value, not an error.
struct GammaHatA {
    bool condition_met = false;
    double gamma = 0.0;  // meaningful only when condition_met
    double A = 0.0;
    double B = 0.0;
    double b = 0.0;
};

inline GammaHatA gamma_hat_a(const BoundContext& ctx) {
    GammaHatA out;
    out.A = tradeoff_coefficient_A(ctx);
    out.B = ctx.alpha_pi.norm();
    out.b = ctx.lambda_min;
    out.condition_met = out.B * out.b - out.A > 0.0;
    if (out.condition_met)
        out.gamma = out.b * (out.A + std::sqrt(out.A * out.B * out.b)) / (out.B * out.b - out.A);
    return out;
}

// Minimizer of F(gamma) = A/gamma + D*gamma, always unique: sqrt(A/D)
inline double gamma_hat_b(const BoundContext& ctx) {
    const double d = tradeoff_coefficient_D(ctx);
    if (!(d > 0.0))
        throw std::invalid_argument("gamma_hat_b: alpha_pi is identically zero (D = 0)");
    return std::sqrt(tradeoff_coefficient_A(ctx) / d);
}

enum class ApproxVariant { a, b };

// estimated overall error: the sample bound plus the chosen approximation bound
// (variant b includes the tail constant, so the value bounds ||f_z - f_rho||)
inline double combined_bound(const BoundContext& ctx, double gamma, ApproxVariant variant) {
    const double approx =
        variant == ApproxVariant::a ? approx_bound_a(ctx, gamma) : approx_bound_b(ctx, gamma);
    return sample_bound_theorem1(ctx, gamma) + approx;
}

// smallest gamma for which the Smale-Zhou bound is stated to hold
inline double sz_min_gamma(const BoundContext& ctx) {
    return 8.0 * ctx.C_K * ctx.C_K * std::log(4.0 / ctx.delta) / std::sqrt(double(ctx.N));
}

// Smale-Zhou: ||f_z - f_H|| <= 12 C_K M log(4/delta)/sqrt(N*gamma),
// valid only for gamma >= sz_min_gamma
inline double sz_bound(const BoundContext& ctx, double m_bound, double gamma) {
    if (gamma < sz_min_gamma(ctx) * (1.0 - 1e-12))
        throw std::invalid_argument("sz_bound: gamma below the validity threshold");
    return 12.0 * ctx.C_K * m_bound * std::log(4.0 / ctx.delta) / std::sqrt(ctx.N * gamma);
}

// output bound below which the sample bound is the more conservative of the two
inline double sz_crossover_M(const BoundContext& ctx, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("sz_crossover_M: gamma must be > 0");
    const double log4d = std::log(4.0 / ctx.delta);
    return ctx.C_K * ctx.C_K / 12.0 *
           std::sqrt((ctx.B_f * ctx.B_f + ctx.B_sigma * ctx.B_sigma) /
                     (ctx.lambda_min * gamma)) /
           (std::sqrt(ctx.delta) * log4d);
}

// N(gamma) = sum lambda_i/(lambda_i + gamma)
inline double effective_dimension(const HypothesisSpace& hs, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("effective_dimension: gamma must be >= 0");
    double acc = 0.0;
    for (double l : hs.lambdas()) acc += l / (l + gamma);
    return acc;
}

inline double effective_dimension(const Eigen::VectorXd& lambdas, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("effective_dimension: gamma must be >= 0");
    return (lambdas.array() / (lambdas.array() + gamma)).sum();
}

struct LgzBound {
    double expectation = 0.0;        // bound on E||f_z - f_H||
    double probability_bound = 0.0;  // expectation/delta via Markov
};

// Lin-Guo-Zhou expectation bound translated to a confidence statement by
// Markov's inequality; p = 2, homoskedastic noise, so ||sigma_rho||_p is
// the constant sigma_rho^2.
inline LgzBound lgz_bound(const BoundContext& ctx, double gamma, double approx_error,
                          double sigma_norm) {
    if (!(gamma > 0.0)) throw std::invalid_argument("lgz_bound: gamma must be > 0");
    const double ck = ctx.C_K;
    const double ng = effective_dimension(ctx.lambdas, gamma);
    const double n = ctx.N;
    const double lead = 2.0 + 56.0 * std::pow(ck, 4) + 57.0 * ck * ck;
    const double middle = 1.0 + 1.0 / ((n * gamma) * (n * gamma)) + ng / (n * gamma);
    const double p = 2.0;
    const double noise_term = std::pow(ck, 1.0 / p) * std::sqrt(sigma_norm) *
                              std::pow(ng / n, 0.5 * (1.0 - 1.0 / p)) *
                              std::pow(1.0 / (n * gamma), 0.5 / p);
    const double approx_term = ck * approx_error / std::sqrt(n * gamma);
    LgzBound out;
    out.expectation = lead * middle * (noise_term + approx_term);
    out.probability_bound = out.expectation / ctx.delta;
    return out;
}

// Wang-Zhou constant chain, instantiated with beta = 1,
// s = eps_int/(1 - eps_int) and eps_int = eps/2 (the statement rescales
// 2*eps to eps); the final bound keeps the printed user-eps exponents.
struct WZConstants {
    double C = 4.0;
    double M_tilde = 0.0;
    double C_beta = 0.0;
    double C0 = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    double C4 = 0.0;
    double C5 = 0.0;
    double C_tilde_eps = 0.0;
    double s = 0.0;
    double beta = 1.0;
    double eps = 0.0;
    double eps_internal = 0.0;
};

// G(s) = ((1-s)/s)^(1-s), the smallest constant with log(1+x) < G(s) x^s
inline double wz_covering_G(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("wz_covering_G: s must be in (0,1)");
    return std::pow((1.0 - s) / s, 1.0 - s);
}

inline WZConstants wz_constants(const BoundContext& ctx, double b_inf, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("wz_constants: eps must lie in (0,1)");
    WZConstants w;
    w.eps = eps;
    w.eps_internal = eps / 2.0;
    w.s = w.eps_internal / (1.0 - w.eps_internal);
    w.beta = 1.0;
    w.C = 4.0;
    // moment hypothesis holds with C = 4, M_tilde = max{sqrt(B_0), B_inf}, B_0 = B_sigma^2
    w.M_tilde = std::max(ctx.B_sigma, b_inf);
    w.C_beta = ctx.B_f * ctx.B_f / ctx.lambda_min;
    const double e_dim = static_cast<double>(ctx.lambdas.size());
    w.C0 = 2.0 * e_dim * wz_covering_G(w.s);
    const double ck = ctx.C_K;
    const double c = w.C;
    w.C1 = 6.0 * ck + 6.0 * c + 8.0 * (1.0 + std::sqrt(2.0 * c)) / w.M_tilde +
           520.0 * std::pow(ck + c + 2.0 * (c + 1.0), 2) * (w.C0 + 1.0);
    w.C2 = std::sqrt(2.0 * (w.C1 + 32.0 * 32.0 * (c + 1.0) * (c + 1.0)));
    w.C3 = std::sqrt(38.0 * w.C_beta) + (ck + 1.0) * std::sqrt(480.0 * w.C_beta) + w.M_tilde;
    w.C4 = w.M_tilde * (2.0 * ck * (c + (1.0 + 2.0 * std::sqrt(2.0 * c)) + 1.0)) + w.C3;
    w.C5 = 38.0 * w.C_beta +
           2.0 * (w.C1 + 32.0 * 32.0 * (c + 1.0) * (c + 1.0)) * w.C4 * w.C4 *
               std::pow(2.0 / (w.s + 1.0), 2) +
           480.0 * (ck + 1.0) * (ck + 1.0) * w.C_beta;
    const double ei = w.eps_internal;
    const double denom = ei * (w.s + 1.0);
    // overflow to +inf is expected for small eps
    w.C_tilde_eps = w.C5 / (ei * ei) * std::pow(w.C2, 4.0 * w.beta / denom) *
                    std::pow(1.0 + std::log(1.0 + 2.0 / denom),
                             w.beta * (1.0 + w.beta) / denom + 2.0);
    return w;
}

// sqrt of the printed squared bound, so the value shares L2-error units
// with the other bounds: sqrt(C_tilde * N^(eps-1) * log(4/delta)^(4/eps+2))
inline double wz_bound(const WZConstants& w, int n, double delta) {
    const double log4d = std::log(4.0 / delta);
    return std::sqrt(w.C_tilde_eps * std::pow(double(n), w.eps - 1.0) *
                     std::pow(log4d, 4.0 / w.eps + 2.0));
}

// flat report with the fixed key set shared with the CLI
struct BoundReportInputs {
    double gamma = 1.0;
    std::optional<double> sz_M;         // output bound for the SZ row
    std::optional<double> wz_b_inf;     // sup bound on f_rho for the WZ row
    std::optional<double> wz_eps;       // eps for the WZ row
    std::optional<double> lgz_approx;   // defaults to approx_bound_a(gamma)
    std::optional<double> lgz_sigma;    // defaults to B_sigma^2
};

inline std::map<std::string, double> bound_report(const BoundContext& ctx,
                                                  const BoundReportInputs& in) {
    std::map<std::string, double> out;
    const double g = in.gamma;
    out["theorem1"] = sample_bound_theorem1(ctx, g);
    out["approx_a"] = approx_bound_a(ctx, g);
    out["approx_b"] = approx_bound_b(ctx, g);
    out["combined_a"] = combined_bound(ctx, g, ApproxVariant::a);
    out["combined_b"] = combined_bound(ctx, g, ApproxVariant::b);
    if (in.sz_M && g >= sz_min_gamma(ctx)) out["sz"] = sz_bound(ctx, *in.sz_M, g);
    const double approx = in.lgz_approx.value_or(approx_bound_a(ctx, g));
    const double sigma_norm = in.lgz_sigma.value_or(ctx.B_sigma * ctx.B_sigma);
    out["lgz"] = lgz_bound(ctx, g, approx, sigma_norm).probability_bound;
    if (in.wz_b_inf && in.wz_eps)
        out["wz"] = wz_bound(wz_constants(ctx, *in.wz_b_inf, *in.wz_eps), ctx.N, ctx.delta);
    const GammaHatA ga = gamma_hat_a(ctx);
    out["condition_a_met"] = ga.condition_met ? 1.0 : 0.0;
    if (ga.condition_met) out["gamma_hat_a"] = ga.gamma;
    out["gamma_hat_b"] = gamma_hat_b(ctx);
    return out;
}

}  // namespace trigreg
