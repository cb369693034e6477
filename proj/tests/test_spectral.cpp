#include "trigreg/spectral.hpp"
#include "trigreg/rng.hpp"
#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace trigreg;
using trigreg::testing::simpson;
using Catch::Approx;

namespace {

SpectralFunction random_function(Rng& rng, double X, int terms) {
    SpectralFunction f(X);
    for (int t = 0; t < terms; ++t) {
        const int q = static_cast<int>(rng.integer(1, 40));
        const Parity p = rng.uniform01() < 0.5 ? Parity::sin : Parity::cos;
        f.add({q, p}, rng.normal(0.0, 1.0));
    }
    return f;
}

}  // namespace

TEST_CASE("pointwise evaluation") {
    SpectralFunction f(2.0);
    f.set(sin_at(1), 3.0);
    CHECK(f.eval(0.5) == Approx(3.0 * std::numbers::sqrt2));

    SpectralFunction zero(2.0);
    CHECK(zero.eval(0.3) == 0.0);

    SpectralFunction mix(2.0);
    mix.set(sin_at(1), 1.0);
    mix.set(cos_at(1), 1.0);
    CHECK(mix.eval(0.0) == Approx(std::numbers::sqrt2));

    CHECK_THROWS_AS(f.eval(1.5), std::domain_error);
}

TEST_CASE("l2 norm is the coefficient norm") {
    SpectralFunction f(2.0);
    f.set(sin_at(1), 3.0);
    f.set(cos_at(4), 4.0);
    CHECK(f.l2_norm() == Approx(5.0));
    CHECK(SpectralFunction(2.0).l2_norm() == 0.0);
}

TEST_CASE("Parseval against quadrature") {
    Rng rng(11);
    const double X = 7.0;
    SpectralFunction f = random_function(rng, X, 20);
    const double quad = simpson([&](double x) { const double v = f.eval(x); return v * v; },
                                -X / 2, X / 2, 100001) /
                        X;
    CHECK(quad == Approx(f.l2_norm() * f.l2_norm()).epsilon(1e-6));
}

TEST_CASE("RKHS norm") {
    HypothesisSpace hs(2.0, {1, 2}, {1.0, 1.0, 1.0, 1.0});
    SpectralFunction f(2.0);
    f.set(sin_at(1), 3.0);
    CHECK(h_norm(f, hs) == Approx(3.0));

    HypothesisSpace hs9(2.0, {1}, {9.0, 9.0});
    CHECK(h_norm(f, hs9) == Approx(1.0));

    SpectralFunction outside(2.0);
    outside.set(sin_at(5), 1.0);
    CHECK_THROWS_AS(h_norm(outside, hs), std::invalid_argument);
}

TEST_CASE("projection splits energy") {
    HypothesisSpace hs(2.0, {1}, {1.0, 1.0});
    SpectralFunction f(2.0);
    f.set(sin_at(1), 3.0);
    f.set(cos_at(2), 4.0);
    const ProjectionSplit split = project(f, hs);
    REQUIRE(split.alpha_pi.size() == 2);
    CHECK(split.alpha_pi[0] == 3.0);
    CHECK(split.alpha_pi[1] == 0.0);
    CHECK(split.tail_energy == Approx(4.0));

    SpectralFunction inside(2.0);
    inside.set(cos_at(1), 2.0);
    CHECK(project(inside, hs).tail_energy == 0.0);

    SpectralFunction outside(2.0);
    outside.set(sin_at(3), 1.0);
    outside.set(cos_at(7), 2.0);
    const ProjectionSplit po = project(outside, hs);
    CHECK(po.alpha_pi.norm() == 0.0);
    CHECK(po.tail_energy == Approx(outside.l2_norm()));
}

TEST_CASE("projection is energy preserving on random functions") {
    Rng rng(17);
    HypothesisSpace hs(2.0, {1, 3, 5}, std::vector<double>(6, 2.0));
    for (int k = 0; k < 30; ++k) {
        const SpectralFunction f = random_function(rng, 2.0, 12);
        const ProjectionSplit split = project(f, hs);
        const double total = split.alpha_pi.squaredNorm() + split.tail_energy * split.tail_energy;
        CHECK(total == Approx(f.l2_norm() * f.l2_norm()).epsilon(1e-12));
    }
}

TEST_CASE("integral operator powers") {
    HypothesisSpace hs2(2.0, {1}, {2.0, 2.0});
    SpectralFunction f(2.0);
    f.set(sin_at(1), 3.0);
    CHECK(integral_operator_power(f, hs2, 1.0).coeff(sin_at(1)) == Approx(6.0));

    HypothesisSpace hs4(2.0, {1}, {4.0, 4.0});
    SpectralFunction g(2.0);
    g.set(sin_at(1), 2.0);
    CHECK(integral_operator_power(g, hs4, -0.5).coeff(sin_at(1)) == Approx(1.0));

    // r = 0 acts as the identity on the span
    SpectralFunction h(2.0);
    h.set(sin_at(1), 1.25);
    h.set(cos_at(1), -0.5);
    const SpectralFunction h0 = integral_operator_power(h, hs4, 0.0);
    CHECK((h0 - h).l2_norm() == Approx(0.0).margin(1e-15));

    // positive powers annihilate the tail
    SpectralFunction with_tail = h;
    with_tail.set(sin_at(9), 1.0);
    CHECK(integral_operator_power(with_tail, hs4, 1.0).coeff(sin_at(9)) == 0.0);
    CHECK_THROWS_AS(integral_operator_power(with_tail, hs4, -1.0), std::invalid_argument);
}

TEST_CASE("negative half power realizes the RKHS norm") {
    Rng rng(23);
    HypothesisSpace hs(3.0, {2, 4, 7}, {0.5, 1.5, 2.5, 3.5, 4.5, 5.5});
    for (int k = 0; k < 20; ++k) {
        SpectralFunction f(3.0);
        for (int i = 0; i < hs.feature_count(); ++i)
            f.set(hs.feature_frequency(i), rng.normal(0.0, 1.0));
        const double via_power = integral_operator_power(f, hs, -0.5).l2_norm();
        CHECK(via_power * via_power == Approx(std::pow(h_norm(f, hs), 2)).epsilon(1e-10));
    }
}

TEST_CASE("power composition") {
    Rng rng(29);
    HypothesisSpace hs(2.0, {1, 2}, {0.5, 1.5, 2.5, 3.5});
    SpectralFunction f(2.0);
    for (int i = 0; i < hs.feature_count(); ++i)
        f.set(hs.feature_frequency(i), rng.normal(0.0, 1.0));
    const double a = 0.7, b = -0.3;
    const SpectralFunction composed =
        integral_operator_power(integral_operator_power(f, hs, b), hs, a);
    const SpectralFunction direct = integral_operator_power(f, hs, a + b);
    for (int i = 0; i < hs.feature_count(); ++i) {
        const Frequency fr = hs.feature_frequency(i);
        CHECK(composed.coeff(fr) == Approx(direct.coeff(fr)).epsilon(1e-12));
    }
}

TEST_CASE("sup norm estimate") {
    SpectralFunction f(2.0);
    f.set(sin_at(1), 1.0);
    const SupNormEstimate single = sup_norm_numeric(f, 10000);
    CHECK(single.grid_max == Approx(std::numbers::sqrt2).epsilon(1e-6));
    CHECK(single.analytic_bound == Approx(std::numbers::sqrt2));

    CHECK(sup_norm_numeric(SpectralFunction(2.0), 10000).grid_max == 0.0);

    SpectralFunction pair(2.0);
    pair.set(sin_at(1), 1.0);
    pair.set(cos_at(1), 1.0);
    const SupNormEstimate both = sup_norm_numeric(pair, 20001);
    CHECK(both.grid_max == Approx(2.0).epsilon(1e-6));  // sqrt(2)(sin + cos) peaks at 2
    CHECK(both.analytic_bound == Approx(2.0 * std::numbers::sqrt2));
    CHECK(both.grid_max <= both.analytic_bound);

    CHECK_THROWS_AS(sup_norm_numeric(f, 100), std::invalid_argument);
}

TEST_CASE("arithmetic preserves the domain") {
    SpectralFunction a(2.0), b(3.0);
    CHECK_THROWS_AS(a + b, std::invalid_argument);

    SpectralFunction c(2.0), d(2.0);
    c.set(sin_at(1), 2.0);
    d.set(sin_at(1), -2.0);
    CHECK((c + d).term_count() == 0);  // exact cancellation drops the term
    CHECK((c - d).coeff(sin_at(1)) == 4.0);
    CHECK(c.scaled(0.5).coeff(sin_at(1)) == 1.0);
}
