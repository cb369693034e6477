#pragma once

#include "trigreg/basis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trigreg {

// A function with finitely many nonzero coefficients in the trigonometric
// basis. Exact container for f_rho, f_H and f_z: evaluation, Parseval
// norms and projections reduce to coefficient arithmetic.
class SpectralFunction {
public:
    explicit SpectralFunction(double domain_width) : X_(domain_width) {
        if (!(X_ > 0.0)) throw std::invalid_argument("SpectralFunction: X must be positive");
    }

    static SpectralFunction from_terms(
        double domain_width, const std::vector<std::pair<Frequency, double>>& terms) {
        SpectralFunction f(domain_width);
        for (const auto& [freq, coeff] : terms) f.add(freq, coeff);
        return f;
    }

    double domain_width() const { return X_; }
    const std::map<Frequency, double>& coefficients() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }

    double coeff(Frequency f) const {
        const auto it = coeffs_.find(f);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    void set(Frequency f, double value) {
        if (f.q < 1) throw std::invalid_argument("SpectralFunction: q must be >= 1");
        if (value == 0.0)
            coeffs_.erase(f);
        else
            coeffs_[f] = value;
    }

    void add(Frequency f, double value) { set(f, coeff(f) + value); }

    double eval(double x) const {
        const double tol = 1e-12 * X_;
        if (x < -X_ / 2 - tol || x > X_ / 2 + tol)
            throw std::domain_error("input outside [-X/2, X/2]");
        double acc = 0.0;
        for (const auto& [freq, c] : coeffs_) {
            const double arg = 2.0 * std::numbers::pi * freq.q * x / X_;
            acc += c * std::numbers::sqrt2 *
                   (freq.parity == Parity::sin ? std::sin(arg) : std::cos(arg));
        }
        return acc;
    }

    // Parseval: the L2 norm under the uniform measure is the coefficient norm
    double l2_norm() const {
        double acc = 0.0;
        for (const auto& [freq, c] : coeffs_) acc += c * c;
        return std::sqrt(acc);
    }

    SpectralFunction scaled(double s) const {
        SpectralFunction out(X_);
        if (s != 0.0)
            for (const auto& [freq, c] : coeffs_) out.set(freq, s * c);
        return out;
    }

    friend SpectralFunction operator+(const SpectralFunction& a, const SpectralFunction& b) {
        a.require_same_domain(b);
        SpectralFunction out = a;
        for (const auto& [freq, c] : b.coeffs_) out.add(freq, c);
        return out;
    }

    friend SpectralFunction operator-(const SpectralFunction& a, const SpectralFunction& b) {
        a.require_same_domain(b);
        SpectralFunction out = a;
        for (const auto& [freq, c] : b.coeffs_) out.add(freq, -c);
        return out;
    }

    void require_same_domain(const SpectralFunction& other) const {
        if (!(std::abs(X_ - other.X_) <= 1e-12 * X_))
            throw std::invalid_argument("SpectralFunction: mismatched domain widths");
    }

private:
    double X_;
    std::map<Frequency, double> coeffs_;
};

// Coefficients of f split against a hypothesis space: alpha_pi holds the
// E in-space coefficients in feature order, tail_energy the l2 norm of
// everything at frequencies outside Q.
struct ProjectionSplit {
    Eigen::VectorXd alpha_pi;
    double tail_energy = 0.0;
};

inline ProjectionSplit project(const SpectralFunction& f, const HypothesisSpace& hs) {
    ProjectionSplit out;
    out.alpha_pi = Eigen::VectorXd::Zero(hs.feature_count());
    double tail2 = 0.0;
    for (const auto& [freq, c] : f.coefficients()) {
        const int i = hs.feature_index(freq);
        if (i >= 0)
            out.alpha_pi[i] = c;
        else
            tail2 += c * c;
    }
    out.tail_energy = std::sqrt(tail2);
    return out;
}

// ||f||_H = sqrt(sum alpha_i^2 / lambda_i); defined only inside the space
inline double h_norm(const SpectralFunction& f, const HypothesisSpace& hs) {
    double acc = 0.0;
    for (const auto& [freq, c] : f.coefficients()) {
        const int i = hs.feature_index(freq);
        if (i < 0)
            throw std::invalid_argument("h_norm: function has a coefficient outside the space");
        acc += c * c / hs.lambdas()[i];
    }
    return std::sqrt(acc);
}

// L_K^r: coefficient i becomes lambda_i^r * alpha_i^pi; frequencies outside
// Q are annihilated. Negative powers require a zero tail (the operator's
// range); silent truncation would corrupt the h_norm identity.
inline SpectralFunction integral_operator_power(const SpectralFunction& f,
                                                const HypothesisSpace& hs, double r) {
    const ProjectionSplit split = project(f, hs);
    if (r < 0.0 && split.tail_energy > 0.0)
        throw std::invalid_argument(
            "integral_operator_power: negative power of a function with energy outside the space");
    SpectralFunction out(f.domain_width());
    for (int i = 0; i < hs.feature_count(); ++i) {
        if (split.alpha_pi[i] == 0.0) continue;
        out.set(hs.feature_frequency(i), std::pow(hs.lambdas()[i], r) * split.alpha_pi[i]);
    }
    return out;
}

struct SupNormEstimate {
    double grid_max = 0.0;       // max |f| over the uniform grid
    double analytic_bound = 0.0; // sqrt(2) * sum |coeff|, always >= the true sup
};

inline SupNormEstimate sup_norm_numeric(const SpectralFunction& f, int grid_points = 10000) {
    if (grid_points < 1000)
        throw std::invalid_argument("sup_norm_numeric: need at least 1000 grid points");
    SupNormEstimate out;
    const double X = f.domain_width();
    for (int g = 0; g < grid_points; ++g) {
        const double x = -X / 2 + X * g / (grid_points - 1.0);
        out.grid_max = std::max(out.grid_max, std::abs(f.eval(x)));
    }
    for (const auto& [freq, c] : f.coefficients()) out.analytic_bound += std::abs(c);
    out.analytic_bound *= std::numbers::sqrt2;
    return out;
}

// inverse of the projection: alpha (feature order) back to a function on Q
inline SpectralFunction function_from_alpha(const HypothesisSpace& hs,
                                            const Eigen::VectorXd& alpha) {
    if (alpha.size() != hs.feature_count())
        throw std::invalid_argument("function_from_alpha: alpha length != E");
    SpectralFunction out(hs.domain_width());
    for (int i = 0; i < alpha.size(); ++i)
        if (alpha[i] != 0.0) out.set(hs.feature_frequency(i), alpha[i]);
    return out;
}

}  // namespace trigreg
