// interfero: simulate, reconstruct, enumerate and round-trip phase retrieval
// measurements. Links only against the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "interfero/interfero.h"

namespace {

struct SignalDeleter {
    void operator()(interfero_signal* s) const { interfero_signal_free(s); }
};
struct MeasurementDeleter {
    void operator()(interfero_measurement* m) const { interfero_measurement_free(m); }
};
using SignalPtr = std::unique_ptr<interfero_signal, SignalDeleter>;
using MeasurementPtr = std::unique_ptr<interfero_measurement, MeasurementDeleter>;

struct CliError {
    int code;
    std::string message;
};

void check(interfero_status s) {
    if (s != INTERFERO_OK) throw CliError{static_cast<int>(s), interfero_last_error()};
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{INTERFERO_ERR_USAGE, "cannot open '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{INTERFERO_ERR_USAGE, "cannot write '" + path + "'"};
    out << text << "\n";
}

std::string take(char* s) {
    std::string out = s ? s : "";
    interfero_string_free(s);
    return out;
}

SignalPtr load_signal(const std::string& path) {
    interfero_signal* s = nullptr;
    check(interfero_signal_from_json(read_file(path).c_str(), &s));
    return SignalPtr(s);
}

// splitmix64 step, used to derive independent per-trial seeds.
uint64_t mix(uint64_t seed, uint64_t a, uint64_t b) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (2 * a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SimOptions {
    std::string mode = "polarization";
    int k = 3;
    double alpha1 = 0.0;
    double alpha2 = -1.5707963267948966;
    double mu = 0.0;
    double noise = 0.0;
    uint64_t seed = 0;
};

void add_sim_options(CLI::App* cmd, SimOptions& o) {
    cmd->add_option("--mode", o.mode, "polarization | two-rotation | known-ref | unknown-ref")
        ->check(CLI::IsMember({"polarization", "two-rotation", "known-ref", "unknown-ref"}));
    cmd->add_option("--K", o.k, "number of polarization channels (>= 3)");
    cmd->add_option("--alpha1", o.alpha1, "first rotation (radians)");
    cmd->add_option("--alpha2", o.alpha2, "second rotation (radians)");
    cmd->add_option("--mu", o.mu, "modulation (radians, 0 = default)");
    cmd->add_option("--noise", o.noise, "relative noise level")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "random seed");
}

interfero_sim_config to_config(const SimOptions& o) {
    interfero_sim_config c;
    interfero_sim_config_default(&c);
    c.mode = o.mode.c_str();
    c.k_channels = o.k;
    c.alpha1 = o.alpha1;
    c.alpha2 = o.alpha2;
    c.mu = o.mu;
    c.noise = o.noise;
    c.seed = o.seed;
    return c;
}

struct TrialRow {
    interfero_report report{};
    double wall_ms = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interfero: 1-D phase retrieval with interference measurements"};
    app.require_subcommand(1);
    std::string tol_spec;
    app.add_option("--tol", tol_spec, "tolerance overrides key=value,... (on top of INTERFERO_TOL)");
    double mu_tol = -1.0;
    app.add_option("--mu-tol", mu_tol, "admissibility tolerance for the modulation check");

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate a measurement set from a signal");
    SimOptions sim_opt;
    std::string sim_in, sim_ref, sim_out;
    sim->add_option("input", sim_in, "signal JSON ('-' for stdin)")->required();
    add_sim_options(sim, sim_opt);
    sim->add_option("--reference", sim_ref, "reference signal JSON for the reference modes");
    sim->add_option("--out", sim_out, "measurement JSON output (default stdout)");

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "reconstruct a signal from a measurement set");
    std::string rec_in, rec_mode, rec_out, rec_report, rec_truth;
    int rec_window = 0;
    rec->add_option("input", rec_in, "measurement JSON ('-' for stdin)")->required();
    rec->add_option("--mode", rec_mode, "override the mode inferred from the data")
        ->check(CLI::IsMember({"polarization", "two-rotation", "known-ref", "unknown-ref"}));
    rec->add_option("--window", rec_window, "support window for known-reference recovery");
    rec->add_option("--out", rec_out, "signal JSON output (default stdout)");
    rec->add_option("--report", rec_report, "report JSON output");
    rec->add_option("--truth", rec_truth, "ground-truth signal JSON to compare against");

    // enumerate
    auto* en = app.add_subcommand("enumerate", "enumerate the non-trivial ambiguities of an intensity");
    std::string en_in, en_out;
    int en_max = 12;
    en->add_option("input", en_in, "signal JSON or {\"intensity\": ...}")->required();
    en->add_option("--max-N", en_max, "refuse support lengths above this cap")->check(CLI::Range(1, 22));
    en->add_option("--out", en_out, "JSON output (default stdout)");

    // roundtrip
    auto* rt = app.add_subcommand("roundtrip", "Monte-Carlo simulate/reconstruct trials as CSV");
    SimOptions rt_opt;
    int trials = 100, n = 8, nh = 0, threads = 0, rt_window = 0;
    std::string rt_out;
    rt->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    rt->add_option("--N", n, "support length of x")->check(CLI::Range(1, 64));
    rt->add_option("--Nh", nh, "support length of the reference (default N)")->check(CLI::Range(0, 64));
    rt->add_option("--window", rt_window, "support window for known-reference recovery");
    rt->add_option("--threads", threads, "worker threads (default: hardware)");
    rt->add_option("--out", rt_out, "CSV output (default stdout)");
    add_sim_options(rt, rt_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : INTERFERO_ERR_USAGE;
    }

    if (mu_tol >= 0.0) tol_spec += (tol_spec.empty() ? "" : ",") + std::string("mu_admissibility=") + fmt(mu_tol);
    const char* tol = tol_spec.empty() ? nullptr : tol_spec.c_str();

    try {
        if (*sim) {
            SignalPtr x = load_signal(sim_in);
            SignalPtr h;
            interfero_sim_config cfg = to_config(sim_opt);
            if (!sim_ref.empty()) {
                h = load_signal(sim_ref);
                cfg.reference = h.get();
            }
            interfero_measurement* m = nullptr;
            check(interfero_simulate(x.get(), &cfg, &m));
            MeasurementPtr mp(m);
            write_text(sim_out, take([&] {
                char* s = nullptr;
                check(interfero_measurement_to_json(mp.get(), &s));
                return s;
            }()));
            std::cerr << "N=" << interfero_signal_length(x.get())
                      << " grid=" << interfero_measurement_grid_size(mp.get())
                      << " values=" << interfero_measurement_value_count(mp.get()) << "\n";
        } else if (*rec) {
            interfero_measurement* m = nullptr;
            check(interfero_measurement_from_json(read_file(rec_in).c_str(), &m));
            MeasurementPtr mp(m);
            SignalPtr truth;
            if (!rec_truth.empty()) truth = load_signal(rec_truth);
            char* result = nullptr;
            const interfero_status s = interfero_reconstruct(
                mp.get(), rec_mode.empty() ? nullptr : rec_mode.c_str(), rec_window, tol, truth.get(), &result);
            if (s != INTERFERO_OK) {
                const std::string msg = interfero_last_error();
                if (!rec_report.empty()) {
                    const nlohmann::json failed = {{"success", false},
                                                   {"rotation", 0.0},
                                                   {"max_err", nullptr},
                                                   {"n0", 0},
                                                   {"mode", rec_mode},
                                                   {"error", {{"code", static_cast<int>(s)}, {"message", msg}}}};
                    write_text(rec_report, failed.dump());
                }
                throw CliError{static_cast<int>(s), msg};
            }
            const nlohmann::json out = nlohmann::json::parse(take(result));
            const auto& signals = out.at("signals");
            write_text(rec_out, (signals.size() == 1 ? signals.front() : signals).dump());
            nlohmann::json report = out.at("report");
            if (signals.size() > 1) report["candidates"] = signals;
            if (out.contains("pairs")) report["pairs"] = out.at("pairs");
            if (out.contains("values_consumed")) report["values_consumed"] = out.at("values_consumed");
            if (!rec_report.empty()) write_text(rec_report, report.dump());
            std::cerr << out.at("report").dump() << "\n";
        } else if (*en) {
            char* result = nullptr;
            check(interfero_enumerate(read_file(en_in).c_str(), en_max, tol, &result));
            write_text(en_out, take(result));
        } else if (*rt) {
            if (nh == 0) nh = n;
            const bool needs_ref = rt_opt.mode == "known-ref" || rt_opt.mode == "unknown-ref";
            std::vector<TrialRow> rows(static_cast<std::size_t>(trials));
            std::atomic<int> next{0};
            std::atomic<int> usage_error{0};
            std::string usage_msg;
            auto worker = [&] {
                for (int t; (t = next.fetch_add(1)) < trials;) {
                    const auto t0 = std::chrono::steady_clock::now();
                    interfero_signal* xs = nullptr;
                    interfero_signal* hs = nullptr;
                    TrialRow& row = rows[static_cast<std::size_t>(t)];
                    if (interfero_random_signal(n, mix(rt_opt.seed, t, 0), 0, &xs) != INTERFERO_OK) {
                        usage_error = 1;
                        continue;
                    }
                    SignalPtr x(xs), h;
                    interfero_sim_config cfg = to_config(rt_opt);
                    cfg.seed = mix(rt_opt.seed, t, 2);
                    if (needs_ref) {
                        interfero_random_signal(nh, mix(rt_opt.seed, t, 1), 0, &hs);
                        h.reset(hs);
                        cfg.reference = h.get();
                    }
                    if (interfero_roundtrip(x.get(), &cfg, rt_window, tol, &row.report) != INTERFERO_OK) {
                        if (usage_error.exchange(1) == 0) usage_msg = interfero_last_error();
                    }
                    row.wall_ms =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                }
            };
            const int nthreads = std::max(1, std::min(threads > 0 ? threads
                                                                   : static_cast<int>(std::thread::hardware_concurrency()),
                                                      trials));
            std::vector<std::thread> pool;
            for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            if (usage_error) throw CliError{INTERFERO_ERR_USAGE, usage_msg};

            std::ostringstream csv;
            csv << "trial,N,mode,success,rotation,max_err,wall_ms\n";
            int ok = 0;
            for (int t = 0; t < trials; ++t) {
                const TrialRow& r = rows[static_cast<std::size_t>(t)];
                ok += r.report.success;
                csv << t << "," << n << "," << rt_opt.mode << "," << r.report.success << ","
                    << fmt(r.report.rotation) << "," << fmt(r.report.max_err) << "," << fmt(r.wall_ms) << "\n";
            }
            csv << "# success_rate=" << fmt(static_cast<double>(ok) / trials) << " (" << ok << "/" << trials << ")";
            write_text(rt_out, csv.str());
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
    return 0;
}
