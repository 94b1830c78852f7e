#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

#include "interfero/error.hpp"
#include "interfero/measurement.hpp"
#include "interfero/prony.hpp"

using namespace interfero;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

std::vector<cplx> forward(const std::vector<std::pair<double, cplx>>& terms, int count) {
    std::vector<cplx> f(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        for (const auto& [nu, c] : terms) f[static_cast<std::size_t>(k)] += c * std::polar(1.0, -nu * k);
    return f;
}

double wrap(double a) { return std::remainder(a, 2.0 * pi); }

}  // namespace

TEST_CASE("prony_recover examples") {
    const auto one = prony_recover(forward({{0.5, 3.0}}, 2), 1);
    REQUIRE(one.terms.size() == 1);
    CHECK(std::abs(one.terms[0].frequency - 0.5) < 1e-12);
    CHECK(std::abs(one.terms[0].coefficient - 3.0) < 1e-12);

    CHECK(prony_recover(std::vector<cplx>(4), 2).terms.empty());

    const auto two = prony_recover(forward({{0.3, 2.0}, {1.1, 1.0 + I}}, 4), 2);
    REQUIRE(two.terms.size() == 2);
    CHECK(std::abs(two.terms[0].frequency - 0.3) < 1e-10);
    CHECK(std::abs(two.terms[0].coefficient - 2.0) < 1e-10);
    CHECK(std::abs(two.terms[1].frequency - 1.1) < 1e-10);
    CHECK(std::abs(two.terms[1].coefficient - (1.0 + I)) < 1e-10);

    CHECK_THROWS_AS(prony_recover(forward({{0.5, 3.0}}, 3), 1), Error);
}

TEST_CASE("prony_recover rejects data that is not an N-term sum") {
    std::vector<cplx> f = forward({{0.3, 2.0}, {1.1, 1.0}, {-2.0, 1.0}}, 4);
    try {
        prony_recover(f, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Numerical);
    }
}

TEST_CASE("property: prony inverts forward evaluation") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> ang(-pi, pi), mag(0.5, 2.0);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 12;
        std::vector<std::pair<double, cplx>> terms;
        while (static_cast<int>(terms.size()) < n) {
            const double nu = ang(rng);
            const bool far = std::all_of(terms.begin(), terms.end(),
                                         [&](const auto& p) { return std::abs(wrap(p.first - nu)) >= 0.1; });
            if (far) terms.emplace_back(nu, std::polar(mag(rng), ang(rng)));
        }
        const auto es = prony_recover(forward(terms, 2 * n), n);
        REQUIRE(es.terms.size() == terms.size());
        for (const auto& [nu, c] : terms) {
            auto it = std::min_element(es.terms.begin(), es.terms.end(), [&](const auto& a, const auto& b) {
                return std::abs(wrap(a.frequency - nu)) < std::abs(wrap(b.frequency - nu));
            });
            CHECK(std::abs(it->coefficient - c) <= 1e-6);
        }
    }
}

TEST_CASE("check_mu examples") {
    CHECK_FALSE(check_mu(2.0 * pi / 3.0, 4));
    CHECK(check_mu(2.0 * pi * (std::sqrt(5.0) - 1.0) / 2.0, 12));
    CHECK(check_mu(pi, 2));
    CHECK_FALSE(check_mu(pi, 3));
}

TEST_CASE("property: inadmissible modulations alias support indices") {
    for (int q = 2; q <= 9; ++q)
        for (int p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const double mu = 2.0 * pi * p / q;
            CHECK_FALSE(check_mu(mu, q + 1));
            CHECK(check_mu(mu, q));
            // Indices n0 and n0 + q share a node.
            for (int n0 : {-3, 0, 4})
                CHECK(std::abs(std::polar(1.0, -mu * n0) - std::polar(1.0, -mu * (n0 + q))) < 1e-12);
        }
}

TEST_CASE("frequencies_to_support examples") {
    const double mu = default_mu();
    ExponentialSum single;
    single.terms.push_back({0.0, 2.0 + I});
    const Signal s = frequencies_to_support(single, mu, 1);
    CHECK(s.offset() == 0);
    CHECK(s.length() == 1);
    CHECK(s[0] == 2.0 + I);

    ExponentialSum es;
    es.terms.push_back({wrap(2 * mu), 1.0});
    es.terms.push_back({wrap(3 * mu), -I});
    const Signal x = frequencies_to_support(es, mu, 2);
    CHECK(x.offset() == 2);
    CHECK(x.length() == 2);
    CHECK(x[3] == -I);

    ExponentialSum off;
    off.terms.push_back({wrap(2 * mu), 1.0});
    off.terms.push_back({wrap(2 * mu + 0.3 * mu), 1.0});
    CHECK_THROWS_AS(frequencies_to_support(off, mu, 2), Error);
}

TEST_CASE("frequencies_to_support finds distant offsets") {
    const double mu = default_mu();
    for (int n0 : {-200, -37, 0, 55, 250}) {
        ExponentialSum es;
        for (int j = 0; j < 4; ++j) es.terms.push_back({wrap((n0 + j) * mu), 1.0 + j});
        const Signal x = frequencies_to_support(es, mu, 4);
        CHECK(x.offset() == n0);
        CHECK(x.length() == 4);
    }
}

TEST_CASE("solve_known_support examples") {
    const double mu = 0.8;
    const auto f = forward({{0.0, 2.0}, {mu, 1.0 + I}}, 4);
    const std::vector<int> support{0, 1};
    const auto c = solve_known_support(f, mu, support);
    const auto es = prony_recover(f, 2);
    REQUIRE(es.terms.size() == 2);
    CHECK(std::abs(c[0] - es.terms[0].coefficient) < 1e-10);
    CHECK(std::abs(c[1] - es.terms[1].coefficient) < 1e-10);

    const auto z = solve_known_support(std::vector<cplx>(4), mu, support);
    for (const cplx& v : z) CHECK(std::abs(v) == 0.0);

    const std::vector<int> only0{0};
    CHECK_THROWS_AS(solve_known_support(f, mu, only0), Error);

    const std::vector<int> aliased{0, 3};
    try {
        solve_known_support(f, 2.0 * pi / 3.0, aliased);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Admissibility);
    }
}
