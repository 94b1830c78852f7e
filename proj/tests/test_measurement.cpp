#include <doctest.h>

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
const cplx I(0.0, 1.0);
}

TEST_CASE("simulate_base examples") {
    const auto g = default_grid(4);
    for (double v : simulate_base(Signal::impulse(), g)) CHECK(std::abs(v - 1.0) < 1e-15);
    const std::vector<double> pi_grid{pi};
    CHECK(simulate_base(Signal(0, {1.0, 1.0}), pi_grid)[0] < 1e-15);
    const std::vector<double> zero{0.0};
    CHECK(std::abs(simulate_base(Signal(0, {1.0, I}), zero)[0] - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("simulate_self_interference examples") {
    std::mt19937_64 rng(41);
    const Signal x = random_signal(4, rng);
    const auto g = default_grid(4);
    const auto base = simulate_base(x, g);
    const auto doubled = simulate_self_interference(x, 0.0, 0.0, g);
    const auto cancelled = simulate_self_interference(x, pi, 0.0, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(std::abs(doubled[k] - 2.0 * base[k]) < 1e-13);
        CHECK(std::abs(cancelled[k]) < 1e-13);
    }
    const std::vector<double> zero{0.0};
    CHECK(std::abs(simulate_self_interference(Signal(0, {1.0, 1.0}), 0.0, pi / 2, zero)[0] - std::sqrt(10.0)) <
          1e-14);
}

TEST_CASE("simulate_reference_interference examples") {
    const Signal x(0, {1.0, I});
    const auto g = default_grid(3);
    const auto base = simulate_base(x, g);
    const auto self = simulate_reference_interference(x, x, g);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(self[k] - 2.0 * base[k]) < 1e-14);
    for (double v : simulate_reference_interference(Signal::impulse(), Signal::impulse(0, -1.0), g))
        CHECK(v == 0.0);
    const std::vector<double> zero{0.0};
    CHECK(std::abs(simulate_reference_interference(x, Signal(0, {1.0, 1.0}), zero)[0] - std::sqrt(10.0)) < 1e-14);
}

TEST_CASE("add_noise") {
    std::mt19937_64 rng(42);
    const Signal x = random_signal(6, rng);
    const MeasurementSet m = simulate(x, {});
    const MeasurementSet same = add_noise(m, 0.0, 5);
    CHECK(same.base == m.base);
    CHECK(same.channels[0].values == m.channels[0].values);

    CHECK(add_noise(m, 1e-6, 7).base == add_noise(m, 1e-6, 7).base);
    CHECK(add_noise(m, 1e-6, 7).base != add_noise(m, 1e-6, 8).base);

    // Relative deviation of N(0, 1e-6) noise stays below 1e-5 except with
    // probability ~1.5e-23 per value.
    std::size_t total = 0, within = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const MeasurementSet noisy = add_noise(m, 1e-6, seed);
        for (std::size_t c = 0; c < m.channels.size(); ++c)
            for (std::size_t k = 0; k < m.grid.size(); ++k) {
                const double v = m.channels[c].values[k];
                if (v == 0.0) continue;
                ++total;
                within += std::abs(noisy.channels[c].values[k] - v) <= 1e-5 * v;
            }
    }
    CHECK(static_cast<double>(within) >= 0.9999 * static_cast<double>(total));
}

TEST_CASE("simulate counts and validation") {
    const Signal x(0, {1.0, I, -2.0});
    const MeasurementSet m = simulate(x, {});
    CHECK(m.channels.size() == 3);
    CHECK(m.grid.size() == 5);
    CHECK(m.value_count() == 20);
    CHECK(m.support_bound == 2);

    SimulationConfig two;
    two.mode = Mode::TwoRotation;
    CHECK(simulate(x, two).value_count() == 15);

    SimulationConfig bad = two;
    bad.alpha2 = pi;
    CHECK_THROWS_AS(simulate(x, bad), Error);

    SimulationConfig k2;
    k2.k_channels = 2;
    CHECK_THROWS_AS(simulate(x, k2), Error);

    SimulationConfig ref;
    ref.mode = Mode::KnownReference;
    CHECK_THROWS_AS(simulate(x, ref), Error);

    MeasurementSet broken = m;
    broken.base.pop_back();
    CHECK_THROWS_AS(validate(broken), Error);
    broken = m;
    broken.base[0] = -1.0;
    CHECK_THROWS_AS(validate(broken), Error);
    broken = m;
    broken.support_bound = 3;
    CHECK_THROWS_AS(validate(broken), Error);
}

TEST_CASE("property: channel fits predict off-grid values") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 9;
        const Signal x = random_signal(n, rng, 4);
        const double alpha = ang(rng), mu = ang(rng);
        const auto g = default_grid(n);
        const auto vals = simulate_self_interference(x, alpha, mu, g);
        std::vector<double> sq;
        for (double v : vals) sq.push_back(v * v);
        const TrigPoly f = fit_trig_poly(g, sq, n - 1);
        for (int k = 0; k < 5; ++k) {
            const std::vector<double> w{ang(rng)};
            const double truth = simulate_self_interference(x, alpha, mu, w)[0];
            CHECK(std::abs(f.eval_real(w[0]) - truth * truth) <= 1e-8 * std::max(1.0, f.max_abs()));
        }
    }
}

TEST_CASE("property: self interference is reference interference with a modulated copy") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int t = 0; t < 50; ++t) {
        const Signal x = random_signal(1 + t % 8, rng, 3);
        const double alpha = ang(rng), mu = ang(rng);
        const auto g = default_grid(9);
        const auto a = simulate_self_interference(x, alpha, mu, g);
        const auto b = simulate_reference_interference(x, rotate(modulate(x, mu), alpha), g);
        for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-12 * (1.0 + a[k]));
    }
}

TEST_CASE("default modulation") {
    const double mu = default_mu();
    CHECK(mu > 0.0);
    CHECK(mu < pi);
    CHECK(std::abs(mu - (2.0 * pi - pi * (std::sqrt(5.0) - 1.0))) < 1e-15);
    CHECK(parse_mode("unknown-ref") == Mode::UnknownReference);
    CHECK_THROWS_AS(parse_mode("holography"), Error);
}
