#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "interfero/error.hpp"
#include "interfero/measurement.hpp"
#include "interfero/recover.hpp"
#include "interfero/trigpoly_fit.hpp"

using namespace interfero;
using std::numbers::pi;

namespace {

std::vector<Sample> sample(const TrigPoly& p, const std::vector<double>& grid) {
    std::vector<Sample> s;
    for (double w : grid) s.push_back({w, p.eval(w)});
    return s;
}

// Sorts roots lexicographically so two root sets can be matched.
bool roots_match(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const cplx& r : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](cplx u, cplx v) { return std::abs(u - r) < std::abs(v - r); });
        if (std::abs(*it - r) > tol) return false;
        b.erase(it);
    }
    return true;
}

}  // namespace

TEST_CASE("fit_trig_poly examples") {
    const std::vector<double> g3 = default_grid(2);
    const std::vector<double> ones(3, 1.0);
    const TrigPoly c = fit_trig_poly(g3, ones, 1);
    CHECK(std::abs(c.coeff(-1)) < 1e-14);
    CHECK(std::abs(c.coeff(0) - 1.0) < 1e-14);
    CHECK(std::abs(c.coeff(1)) < 1e-14);

    const TrigPoly a = intensity_function(Signal(0, {1.0, 1.0, 1.0}));
    const TrigPoly f = fit_trig_poly(sample(a, default_grid(3)), 2);
    const double want[] = {1, 2, 3, 2, 1};
    for (int n = -2; n <= 2; ++n) CHECK(std::abs(f.coeff(n) - want[n + 2]) < 1e-12);

    std::vector<double> cosv;
    for (double w : g3) cosv.push_back(std::cos(w));
    const TrigPoly k = fit_trig_poly(g3, cosv, 1);
    CHECK(std::abs(k.coeff(-1) - 0.5) < 1e-14);
    CHECK(std::abs(k.coeff(0)) < 1e-14);
    CHECK(std::abs(k.coeff(1) - 0.5) < 1e-14);
}

TEST_CASE("fit_trig_poly errors") {
    const std::vector<double> grid{0.0, 1.0, 2.0 * pi};
    const std::vector<double> v{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(fit_trig_poly(grid, v, 1), Error);
    const std::vector<double> g2{0.0, 1.0};
    CHECK_THROWS_AS(fit_trig_poly(g2, std::vector<double>{1.0, 1.0}, 1), Error);

    // Degree 3 data fitted with degree 1 on an oversampled grid.
    const TrigPoly a = intensity_function(Signal(0, {1.0, 0.0, 0.0, 2.0}));
    std::vector<double> vals;
    const auto g = default_grid(6);
    for (double w : g) vals.push_back(a.eval_real(w));
    try {
        fit_trig_poly(g, vals, 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Numerical);
    }
}

TEST_CASE("estimate_support_length examples") {
    const auto est = [](const Signal& x, int bound) {
        return estimate_support_length(sample(intensity_function(x), default_grid(bound + 1)), bound);
    };
    CHECK(est(Signal(0, {1.0, 1.0, 1.0}), 5) == 3);
    CHECK(est(Signal::impulse(), 5) == 1);
    CHECK(est(Signal(0, {1.0, 0.0, 0.0, 2.0}), 5) == 4);
}

TEST_CASE("poly_roots examples") {
    const cplx I(0.0, 1.0);
    CHECK(roots_match(poly_roots(AlgebraicPoly({1.0, 0.0, 1.0})), {I, -I}, 1e-12));
    CHECK(roots_match(poly_roots(AlgebraicPoly({2.0, 5.0, 2.0})), {-0.5, -2.0}, 1e-12));
    const auto z3 = poly_roots(AlgebraicPoly({0.0, 0.0, 0.0, 1.0}));
    REQUIRE(z3.size() == 3);
    for (const cplx& r : z3) CHECK(std::abs(r) == 0.0);
}

TEST_CASE("property: fit then evaluate reproduces samples") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 12;
        const TrigPoly a = intensity_function(random_signal(n, rng));
        const auto grid = default_grid(n);
        const TrigPoly f = fit_trig_poly(sample(a, grid), n - 1);
        for (double w : grid) CHECK(std::abs(f.eval(w) - a.eval(w)) <= 1e-10 * a.max_abs());
    }
}

TEST_CASE("property: roots reconstruct random polynomials") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const int deg = 1 + t % 24;
        // Well separated roots: jittered points on circles of radius 0.5..1.5.
        std::vector<cplx> truth;
        for (int k = 0; k < deg; ++k) {
            const double r = 0.5 + (k % 3) * 0.5;
            truth.push_back(std::polar(r, 2.0 * pi * (k + 0.2 * u(rng)) / deg));
        }
        const cplx lead(u(rng) + 2.0, u(rng));
        const AlgebraicPoly p = AlgebraicPoly::from_roots(truth, lead);
        const auto roots = poly_roots(p);
        const AlgebraicPoly q = AlgebraicPoly::from_roots(roots, p.lead());
        double diff = 0.0, scale = 0.0;
        for (int k = 0; k <= deg; ++k) {
            diff = std::max(diff, std::abs(p.coeffs()[k] - q.coeffs()[k]));
            scale = std::max(scale, std::abs(p.coeffs()[k]));
        }
        CHECK(diff <= 1e-8 * scale);
    }
}

TEST_CASE("property: support length estimate is exact for random signals") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 15;
        const Signal x = random_signal(n, rng, 10);
        const int bound = n - 1 + t % 4;
        CHECK(estimate_support_length(sample(intensity_function(x), default_grid(bound + 1)), bound) == n);
    }
}

TEST_CASE("real_trig_sqrt recovers a squared real trig polynomial") {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 50; ++t) {
        const Signal s = random_signal(1 + t % 5, rng);
        // T = Re-part-like Hermitian polynomial built from an autocorrelation difference.
        const TrigPoly tp = (intensity_function(s) - intensity_function(random_signal(1 + t % 5, rng))).hermitian_part();
        const TrigSqrt r = real_trig_sqrt(tp * tp);
        CHECK(r.relative_residual < 1e-9);
        const double err = std::min(max_coeff_diff(r.root, tp), max_coeff_diff(r.root * cplx(-1.0), tp));
        CHECK(err <= 1e-7 * tp.max_abs());
    }
}
