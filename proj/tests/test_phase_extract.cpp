#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "interfero/error.hpp"
#include "interfero/measurement.hpp"
#include "interfero/phase_extract.hpp"
#include "interfero/recover.hpp"

using namespace interfero;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

std::vector<double> polarization_inputs(cplx z1, cplx z2, int k) {
    std::vector<double> v;
    for (int j = 0; j < k; ++j) v.push_back(std::abs(z1 + std::polar(1.0, -2.0 * pi * j / k) * z2));
    return v;
}

}  // namespace

TEST_CASE("polarize examples") {
    CHECK(std::abs(polarize(polarization_inputs(1.0, I, 3), 3) - I) < 1e-15);
    CHECK(std::abs(polarize(polarization_inputs(2.0 - I, 0.0, 3), 3)) < 1e-15);
    CHECK(std::abs(polarize(polarization_inputs(1.0, 1.0, 4), 4) - 1.0) < 1e-15);
    try {
        polarize(polarization_inputs(1.0, 1.0, 2), 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Admissibility);
    }
}

TEST_CASE("property: polarization identity") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> mag(0.0, 10.0), ang(-pi, pi);
    for (int t = 0; t < 500; ++t) {
        const cplx z1 = std::polar(mag(rng), ang(rng)), z2 = std::polar(mag(rng), ang(rng));
        const int k = 3 + t % 6;
        CHECK(std::abs(polarize(polarization_inputs(z1, z2, k), k) - std::conj(z1) * z2) <= 1e-12);
    }
}

TEST_CASE("two_rotation_phase_diff examples") {
    const double i1 = std::sqrt(2.0 + 2.0 * 0.5);
    const double i2 = std::sqrt(2.0 + 2.0 * std::sqrt(3.0) / 2.0);
    CHECK(std::abs(two_rotation_phase_diff(i1, i2, 1.0, 1.0, 0.0, -pi / 2) - pi / 3) < 1e-12);
    CHECK(std::abs(two_rotation_phase_diff(2.0, std::sqrt(2.0), 1.0, 1.0, 0.0, -pi / 2)) < 1e-12);
    try {
        two_rotation_phase_diff(1.0, 1.0, 1.0, 1.0, 0.0, pi);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Admissibility);
    }
    CHECK_THROWS_AS(two_rotation_phase_diff(1.0, 1.0, 0.0, 1.0, 0.0, -pi / 2, 1e-6, 1e-9), Error);
}

TEST_CASE("property: two_rotation_phase_diff depends on alpha modulo 2 pi") {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> ang(-pi, pi), mag(0.1, 3.0);
    for (int t = 0; t < 200; ++t) {
        const double m1 = mag(rng), m2 = mag(rng), delta = ang(rng), a1 = ang(rng);
        double a2 = ang(rng);
        if (std::abs(std::sin(a1 - a2)) < 0.1) a2 = a1 + pi / 2;
        const auto inten = [&](double a) { return std::sqrt(m1 * m1 + m2 * m2 + 2 * m1 * m2 * std::cos(delta + a)); };
        const double d0 = two_rotation_phase_diff(inten(a1), inten(a2), m1, m2, a1, a2);
        const double d1 = two_rotation_phase_diff(inten(a1), inten(a2), m1, m2, a1 + 2 * pi, a2);
        const double d2 = two_rotation_phase_diff(inten(a1), inten(a2), m1, m2, a1, a2 - 2 * pi);
        CHECK(std::abs(std::polar(1.0, d0) - std::polar(1.0, delta)) < 1e-9);
        CHECK(std::abs(d0 - d1) < 1e-9);
        CHECK(std::abs(d0 - d2) < 1e-9);
    }
}

TEST_CASE("relative_phase_from_channels examples") {
    const Signal x(0, {1.0, I});
    SimulationConfig cfg;
    cfg.mu = 0.7;
    const MeasurementSet m = simulate(x, cfg);
    const cplx want = std::conj(dtft_eval(x, 0.3)) * dtft_eval(x, 0.3 - 0.7);
    CHECK(std::abs(relative_phase_from_channels(m, 0.3, Extraction::Polarization) - want / std::abs(want)) < 1e-9);

    const MeasurementSet imp = simulate(Signal::impulse(0, 2.0), cfg);
    for (double w : {-2.0, 0.0, 1.1})
        CHECK(std::abs(relative_phase_from_channels(imp, w, Extraction::Polarization) - 1.0) < 1e-12);

    const MeasurementSet zero_at_pi = simulate(Signal(0, {1.0, 1.0}), cfg);
    CHECK_THROWS_AS(relative_phase_from_channels(zero_at_pi, pi, Extraction::Polarization), Error);
}

TEST_CASE("property: both extraction modes match the true phase") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int t = 0; t < 50; ++t) {
        const Signal x = random_signal(2 + t % 8, rng, 3);
        SimulationConfig pol;
        SimulationConfig two;
        two.mode = Mode::TwoRotation;
        const ChannelModel mp(simulate(x, pol), Extraction::Polarization);
        const ChannelModel mt(simulate(x, two), Extraction::TwoRotation);
        for (int k = 0; k < 10; ++k) {
            const double w = ang(rng);
            const cplx a = dtft_eval(x, w), b = dtft_eval(x, w - mp.mu());
            if (std::abs(a) <= 1e-6 || std::abs(b) <= 1e-6) continue;
            const cplx want = std::conj(a) * b / std::abs(std::conj(a) * b);
            CHECK(std::abs(mp.relative_phase(w) - want) <= 1e-8);
            CHECK(std::abs(mt.relative_phase(w) - want) <= 1e-8);
        }
    }
}

TEST_CASE("channel model counts consumed values") {
    const Signal x(0, {1.0, I, -2.0, 0.5});
    const ChannelModel m(simulate(x, {}), Extraction::Polarization);
    CHECK(m.support_length() == 4);
    CHECK(m.values_consumed() == 8 * 4 - 4);
}
