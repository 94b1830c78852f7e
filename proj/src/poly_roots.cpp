// Aberth-Ehrlich simultaneous root finder with Newton-polygon start values.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "interfero/error.hpp"
#include "interfero/trigpoly_fit.hpp"

namespace interfero {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Start values on circles whose radii come from the upper convex hull of
// (k, log|c_k|). Handles root moduli spread over many orders of magnitude.
std::vector<cplx> initial_guesses(std::span<const cplx> c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<double> lg(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        lg[k] = c[k] == cplx{} ? -std::numeric_limits<double>::infinity() : std::log(std::abs(c[k]));

    std::vector<int> hull;
    for (int k = 0; k <= n; ++k) {
        if (!std::isfinite(lg[static_cast<std::size_t>(k)])) continue;
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2];
            const int b = hull.back();
            // Drop b when it lies on or below the segment a-k.
            const double cross = (lg[static_cast<std::size_t>(b)] - lg[static_cast<std::size_t>(a)]) * (k - a) -
                                 (lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(a)]) * (b - a);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }

    std::vector<cplx> z;
    z.reserve(static_cast<std::size_t>(n));
    constexpr double sigma = 0.7;
    for (std::size_t e = 1; e < hull.size(); ++e) {
        const int i = hull[e - 1];
        const int j = hull[e];
        const int m = j - i;
        const double radius = std::exp((lg[static_cast<std::size_t>(i)] - lg[static_cast<std::size_t>(j)]) / m);
        for (int q = 0; q < m; ++q) {
            const double ang = 2.0 * std::numbers::pi * (static_cast<double>(q) / m + static_cast<double>(i) / n) + sigma;
            z.push_back(std::polar(radius, ang));
        }
    }
    return z;
}

bool converged(const AlgebraicPoly& p, cplx z, cplx value) {
    return std::abs(value) <= 16.0 * kEps * p.magnitude_bound(z);
}

}  // namespace

std::vector<cplx> poly_roots(const AlgebraicPoly& p, int max_iterations) {
    if (p.degree() < 1) fail(ErrorKind::InvalidArgument, "root finding needs degree >= 1");

    auto all = p.coeffs();
    std::size_t zeros = 0;
    while (zeros < all.size() && all[zeros] == cplx{}) ++zeros;
    std::vector<cplx> roots(zeros, cplx{});
    const AlgebraicPoly q(std::vector<cplx>(all.begin() + static_cast<std::ptrdiff_t>(zeros), all.end()));
    const int n = q.degree();
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-q.coeffs()[0] / q.coeffs()[1]);
        return roots;
    }

    std::vector<cplx> z = initial_guesses(q.coeffs());
    std::vector<bool> done(z.size(), false);
    int iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        bool all_done = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k]) continue;
            auto [v, dv] = q.eval_with_derivative(z[k]);
            if (converged(q, z[k], v)) {
                done[k] = true;
                continue;
            }
            all_done = false;
            if (dv == cplx{}) {
                z[k] *= cplx(1.0 + 1e-3, 1e-3);
                continue;
            }
            const cplx ratio = v / dv;
            cplx repulsion{};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            const cplx step = ratio / (1.0 - ratio * repulsion);
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[k] -= step;
        }
        if (all_done) break;
    }
    if (iterations == max_iterations) {
        // Clustered roots can stall the stopping test while already having a
        // small backward error.
        for (const cplx& r : z)
            if (std::abs(q.eval(r)) > 1e-9 * q.magnitude_bound(r))
                fail(ErrorKind::Numerical, "root finding failed");
    }

    // Newton polishing; a step is kept only if it lowers the residual and
    // stays well inside the gap to the nearest other root.
    for (std::size_t k = 0; k < z.size(); ++k) {
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != k) gap = std::min(gap, std::abs(z[k] - z[j]));
        cplx& r = z[k];
        for (int it = 0; it < 3; ++it) {
            auto [v, dv] = q.eval_with_derivative(r);
            if (dv == cplx{} || v == cplx{}) break;
            const cplx step = v / dv;
            if (std::abs(step) > 0.1 * gap) break;
            const cplx cand = r - step;
            if (std::abs(q.eval(cand)) < std::abs(v)) r = cand;
            else break;
        }
    }
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace interfero
