#include <doctest.h>

#include <cstdlib>
#include <random>

#include "interfero/error.hpp"
#include "interfero/json_io.hpp"
#include "interfero/tolerances.hpp"

using namespace interfero;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind{0};
}

}  // namespace

TEST_CASE("signal JSON round trip is bit exact") {
    std::mt19937_64 rng(81);
    for (int t = 0; t < 50; ++t) {
        const Signal x = random_signal(1 + t % 9, rng, 30);
        const std::string text = signal_to_json(x).dump();
        CHECK(signal_from_json(parse_json(text)) == x);
        CHECK(signal_to_json(signal_from_json(parse_json(text))).dump() == text);
    }
}

TEST_CASE("measurement JSON round trip is bit exact") {
    std::mt19937_64 rng(82);
    const Signal x = random_signal(5, rng, 3);
    const Signal h = random_signal(3, rng);
    for (Mode mode : {Mode::Polarization, Mode::TwoRotation, Mode::KnownReference, Mode::UnknownReference}) {
        SimulationConfig cfg;
        cfg.mode = mode;
        cfg.reference = h;
        const MeasurementSet m = simulate(x, cfg);
        const std::string text = measurement_to_json(m).dump();
        const MeasurementSet back = measurement_from_json(parse_json(text));
        CHECK(back.grid == m.grid);
        CHECK(back.base == m.base);
        CHECK(back.support_bound == m.support_bound);
        CHECK(measurement_to_json(back).dump() == text);
        CHECK(back.reference.has_value() == m.reference.has_value());
        if (m.reference) CHECK(back.reference->signal.has_value() == (mode == Mode::KnownReference));
    }
}

TEST_CASE("malformed JSON") {
    CHECK(kind_of([] { parse_json("{\"offset\": 0, \"coeffs\": [[1, 0]"); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { signal_from_json(parse_json("{\"coeffs\": []}")); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { signal_from_json(parse_json("{\"offset\": 0.5, \"coeffs\": []}")); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { signal_from_json(parse_json("{\"offset\": 0, \"coeffs\": [[1]]}")); }) == ErrorKind::Malformed);
    CHECK(kind_of([] { signal_from_json(parse_json("{\"offset\": 0, \"coeffs\": [[\"a\", 0]]}")); }) ==
          ErrorKind::Malformed);
    CHECK(kind_of([] {
              measurement_from_json(parse_json(
                  R"({"grid":[0,1,2],"base":[1,1],"channels":[],"reference":null,"support_bound":1})"));
          }) == ErrorKind::Malformed);
}

TEST_CASE("intensity input") {
    const TrigPoly a = intensity_from_json(parse_json(R"({"intensity": [[2,0],[5,0],[2,0]]})"));
    CHECK(a.degree() == 1);
    CHECK(a.coeff(1) == cplx(2.0));
    const TrigPoly b = intensity_from_json(parse_json(R"({"intensity": {"offset": -1, "coeffs": [[2,0],[5,0],[2,0]]}})"));
    CHECK(max_coeff_diff(a, b) == 0.0);
    CHECK(kind_of([] { intensity_from_json(parse_json(R"({"intensity": [[1,0],[1,0]]})")); }) == ErrorKind::Malformed);
}

TEST_CASE("report JSON") {
    RoundTripReport r;
    r.success = true;
    r.rotation = 0.5;
    r.max_err = 1e-12;
    r.n0 = 3;
    r.mode = Mode::TwoRotation;
    const json j = report_to_json(r);
    CHECK(j["success"] == true);
    CHECK(j["mode"] == "two-rotation");
    CHECK(j["n0"] == 3);
    CHECK_FALSE(j.contains("error"));
    r.error_kind = ErrorKind::Numerical;
    CHECK(report_to_json(r)["error"]["kind"] == to_string(ErrorKind::Numerical));
}

TEST_CASE("tolerance overrides") {
    const Tolerances t = Tolerances::parse("fit_residual=1e-4, lattice=0.002,max_offset=10");
    CHECK(t.fit_residual == 1e-4);
    CHECK(t.lattice == 0.002);
    CHECK(t.max_offset == 10);
    CHECK(t.equivalence == Tolerances{}.equivalence);
    CHECK(Tolerances::parse("1e-3").equivalence == 1e-3);
    CHECK(kind_of([] { Tolerances::parse("bogus=1"); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { Tolerances::parse("lattice=abc"); }) == ErrorKind::InvalidArgument);

    const Tolerances n = Tolerances{}.for_noise(1e-6);
    CHECK(n.fit_residual >= 1e-3);
    CHECK(n.lattice == Tolerances{}.lattice);
    CHECK(Tolerances{}.for_noise(0.0).fit_residual == Tolerances{}.fit_residual);

    setenv("INTERFERO_TOL", "zero_disjoint=1e-4", 1);
    CHECK(Tolerances::from_env().zero_disjoint == 1e-4);
    unsetenv("INTERFERO_TOL");
    CHECK(Tolerances::from_env().zero_disjoint == Tolerances{}.zero_disjoint);
}
