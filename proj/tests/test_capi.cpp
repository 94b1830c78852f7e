// Exercises the shared library through its C interface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "interfero/interfero.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    interfero_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("signal handles") {
    const double re[] = {0.0, 1.0, 0.0, -2.0, 0.0};
    const double im[] = {0.0, 0.0, 1.0, 0.0, 0.0};
    interfero_signal* x = nullptr;
    REQUIRE(interfero_signal_create(4, re, im, 5, &x) == INTERFERO_OK);
    CHECK(interfero_signal_offset(x) == 5);
    CHECK(interfero_signal_length(x) == 3);
    double r[3], i[3];
    CHECK(interfero_signal_coeffs(x, r, i, 3) == INTERFERO_OK);
    CHECK(i[1] == 1.0);

    char* text = nullptr;
    REQUIRE(interfero_signal_to_json(x, &text) == INTERFERO_OK);
    const std::string json = take(text);
    interfero_signal* y = nullptr;
    REQUIRE(interfero_signal_from_json(json.c_str(), &y) == INTERFERO_OK);
    REQUIRE(interfero_signal_to_json(y, &text) == INTERFERO_OK);
    CHECK(take(text) == json);
    interfero_signal_free(x);
    interfero_signal_free(y);
    interfero_signal_free(nullptr);
}

TEST_CASE("error reporting") {
    interfero_signal* x = nullptr;
    CHECK(interfero_signal_from_json("{\"offset\": 0, \"coeffs\": [[1,", &x) == INTERFERO_ERR_MALFORMED);
    CHECK(x == nullptr);
    CHECK(std::strlen(interfero_last_error()) > 0);
    CHECK(interfero_signal_create(0, nullptr, nullptr, 3, &x) == INTERFERO_ERR_USAGE);
    const double re[] = {NAN};
    CHECK(interfero_signal_create(0, re, nullptr, 1, &x) != INTERFERO_OK);
}

TEST_CASE("simulate and reconstruct") {
    const double re[] = {1.0, 0.0, -2.0};
    const double im[] = {0.0, 1.0, 0.0};
    interfero_signal* x = nullptr;
    REQUIRE(interfero_signal_create(5, re, im, 3, &x) == INTERFERO_OK);
    interfero_sim_config cfg;
    interfero_sim_config_default(&cfg);
    interfero_measurement* m = nullptr;
    REQUIRE(interfero_simulate(x, &cfg, &m) == INTERFERO_OK);
    CHECK(interfero_measurement_value_count(m) == 20);
    CHECK(interfero_measurement_channel_count(m) == 3);
    CHECK(interfero_measurement_grid_size(m) == 5);

    char* result = nullptr;
    REQUIRE(interfero_reconstruct(m, nullptr, 0, nullptr, x, &result) == INTERFERO_OK);
    const std::string out = take(result);
    CHECK(out.find("\"success\":true") != std::string::npos);
    CHECK(out.find("\"n0\":5") != std::string::npos);

    cfg.mode = "two-rotation";
    cfg.alpha2 = M_PI;
    interfero_measurement* bad = nullptr;
    CHECK(interfero_simulate(x, &cfg, &bad) == INTERFERO_ERR_USAGE);

    cfg.mode = "polarization";
    cfg.mu = M_PI;
    REQUIRE(interfero_simulate(x, &cfg, &bad) == INTERFERO_OK);
    CHECK(interfero_reconstruct(bad, nullptr, 0, nullptr, nullptr, &result) == INTERFERO_ERR_ADMISSIBILITY);
    CHECK(interfero_reconstruct(bad, "sideways", 0, nullptr, nullptr, &result) == INTERFERO_ERR_USAGE);

    interfero_measurement_free(bad);
    interfero_measurement_free(m);
    interfero_signal_free(x);
}

TEST_CASE("enumerate") {
    char* result = nullptr;
    REQUIRE(interfero_enumerate("{\"offset\":0,\"coeffs\":[[1,0],[2,0]]}", 8, nullptr, &result) == INTERFERO_OK);
    CHECK(take(result).find("\"count\":1") != std::string::npos);
    REQUIRE(interfero_enumerate("{\"intensity\":[[1,0],[2,0],[3,0],[2,0],[1,0]]}", 8, nullptr, &result) ==
            INTERFERO_OK);
    CHECK(take(result).find("\"N\":3") != std::string::npos);
    CHECK(interfero_enumerate("{\"offset\":0,\"coeffs\":[[1,0],[2,0],[3,0]]}", 2, nullptr, &result) ==
          INTERFERO_ERR_USAGE);
}

TEST_CASE("roundtrip reports from worker threads") {
    std::vector<interfero_report> reports(8);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([t, &reports] {
            interfero_signal* x = nullptr;
            interfero_random_signal(6, 100 + t, 10, &x);
            interfero_sim_config cfg;
            interfero_sim_config_default(&cfg);
            cfg.mode = t % 2 ? "two-rotation" : "polarization";
            interfero_roundtrip(x, &cfg, 0, nullptr, &reports[t]);
            interfero_signal_free(x);
        });
    for (auto& th : pool) th.join();
    for (const auto& r : reports) {
        CHECK(r.success == 1);
        CHECK(r.max_err <= 1e-6);
        CHECK(r.status == INTERFERO_OK);
    }

    interfero_signal* x = nullptr;
    interfero_random_signal(4, 1, 0, &x);
    interfero_sim_config cfg;
    interfero_sim_config_default(&cfg);
    cfg.mu = 2.0 * M_PI / 3.0;
    interfero_report r;
    REQUIRE(interfero_roundtrip(x, &cfg, 0, nullptr, &r) == INTERFERO_OK);
    CHECK(r.success == 0);
    CHECK(r.status == INTERFERO_ERR_ADMISSIBILITY);
    interfero_signal_free(x);
}

TEST_CASE("modulation check") {
    CHECK(interfero_check_mu(interfero_default_mu(), 12, 1e-6) == 1);
    CHECK(interfero_check_mu(2.0 * M_PI / 3.0, 4, 1e-6) == 0);
}
