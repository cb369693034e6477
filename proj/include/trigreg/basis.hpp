#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <compare>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trigreg {

enum class Parity { sin, cos };

// One member of the trigonometric basis: sqrt(2)*sin(2*pi*q*x/X) or
// sqrt(2)*cos(2*pi*q*x/X), q >= 1. The constant function is excluded;
// orthonormality under the uniform measure holds exactly for q >= 1.
struct Frequency {
    int q = 1;
    Parity parity = Parity::sin;

    friend auto operator<=>(const Frequency&, const Frequency&) = default;
};

inline Frequency sin_at(int q) { return {q, Parity::sin}; }
inline Frequency cos_at(int q) { return {q, Parity::cos}; }

// Finite-dimensional hypothesis space: E = 2*|Q| weighted trigonometric
// features on [-X/2, X/2]. Feature i is the sine at Q[i] for i < E/2 and
// the cosine at Q[i - E/2] otherwise; lambda_i weights feature i in the
// kernel and the RKHS norm.
class HypothesisSpace {
public:
    HypothesisSpace(double domain_width, std::vector<int> frequencies,
                    std::vector<double> lambdas)
        : X_(domain_width), freqs_(std::move(frequencies)), lambdas_(std::move(lambdas)) {
        if (!(X_ > 0.0)) throw std::invalid_argument("HypothesisSpace: X must be positive");
        if (freqs_.empty()) throw std::invalid_argument("HypothesisSpace: Q must be nonempty");
        if (lambdas_.size() != 2 * freqs_.size())
            throw std::invalid_argument("HypothesisSpace: need E = 2*|Q| lambdas");
        std::set<int> seen;
        for (int q : freqs_) {
            if (q < 1) throw std::invalid_argument("HypothesisSpace: frequencies must be >= 1");
            if (!seen.insert(q).second)
                throw std::invalid_argument("HypothesisSpace: duplicate frequency " + std::to_string(q));
        }
        for (double l : lambdas_)
            if (!(l > 0.0)) throw std::invalid_argument("HypothesisSpace: lambdas must be positive");
    }

    double domain_width() const { return X_; }
    int pair_count() const { return static_cast<int>(freqs_.size()); }
    int feature_count() const { return 2 * pair_count(); }
    const std::vector<int>& frequencies() const { return freqs_; }
    const std::vector<double>& lambdas() const { return lambdas_; }

    Frequency feature_frequency(int i) const {
        const int half = pair_count();
        if (i < 0 || i >= 2 * half) throw std::out_of_range("feature index");
        return i < half ? sin_at(freqs_[i]) : cos_at(freqs_[i - half]);
    }

    // -1 when the frequency is not part of the space
    int feature_index(Frequency f) const {
        const auto it = std::find(freqs_.begin(), freqs_.end(), f.q);
        if (it == freqs_.end()) return -1;
        const int j = static_cast<int>(it - freqs_.begin());
        return f.parity == Parity::sin ? j : j + pair_count();
    }

    // membership tolerance absorbs round-off from uniform samplers
    bool contains(double x) const {
        const double tol = 1e-12 * X_;
        return x >= -X_ / 2 - tol && x <= X_ / 2 + tol;
    }

    void require_in_domain(double x) const {
        if (!contains(x))
            throw std::domain_error("input outside [-X/2, X/2]");
    }

    double basis_value(Frequency f, double x) const {
        const double arg = 2.0 * std::numbers::pi * f.q * x / X_;
        return std::numbers::sqrt2 * (f.parity == Parity::sin ? std::sin(arg) : std::cos(arg));
    }

    Eigen::VectorXd eval_features(double x) const {
        require_in_domain(x);
        const int half = pair_count();
        Eigen::VectorXd phi(2 * half);
        for (int j = 0; j < half; ++j) {
            const double arg = 2.0 * std::numbers::pi * freqs_[j] * x / X_;
            phi[j] = std::numbers::sqrt2 * std::sin(arg);
            phi[j + half] = std::numbers::sqrt2 * std::cos(arg);
        }
        return phi;
    }

    // K(xa, xb) = sum_i lambda_i phi_i(xa) phi_i(xb)
    double kernel(double xa, double xb) const {
        require_in_domain(xa);
        require_in_domain(xb);
        const Eigen::VectorXd pa = eval_features(xa);
        const Eigen::VectorXd pb = eval_features(xb);
        double acc = 0.0;
        for (int i = 0; i < pa.size(); ++i) acc += lambdas_[i] * pa[i] * pb[i];
        return acc;
    }

    // the printed kernel bound: sqrt(sum_j max{lambda_j, lambda_{j+E/2}});
    // every bound formula consumes this value
    double ck_paper() const {
        const int half = pair_count();
        double acc = 0.0;
        for (int j = 0; j < half; ++j) acc += std::max(lambdas_[j], lambdas_[j + half]);
        return std::sqrt(acc);
    }

    // diagnostic supremum of sqrt(K(x, x)) over a uniform grid; for a PSD
    // kernel the diagonal dominates by Cauchy-Schwarz
    double ck_numeric(int grid_points = 1000) const {
        if (grid_points < 100)
            throw std::invalid_argument("ck_numeric: need at least 100 grid points");
        double best = 0.0;
        for (int g = 0; g < grid_points; ++g) {
            const double x = -X_ / 2 + X_ * g / (grid_points - 1.0);
            best = std::max(best, kernel(x, x));
        }
        return std::sqrt(best);
    }

    double lambda_min() const {
        return *std::min_element(lambdas_.begin(), lambdas_.end());
    }

private:
    double X_;
    std::vector<int> freqs_;
    std::vector<double> lambdas_;
};

}  // namespace trigreg
