#include "interfero/interfero.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <new>
#include <random>
#include <string>

#include "interfero/json_io.hpp"
#include "interfero/prony.hpp"
#include "interfero/recover.hpp"

using namespace interfero;

struct interfero_signal {
    Signal value;
};

struct interfero_measurement {
    MeasurementSet value;
};

namespace {

thread_local std::string g_last_error;

interfero_status set_error(interfero_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
interfero_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return INTERFERO_OK;
    } catch (const Error& e) {
        return set_error(static_cast<interfero_status>(e.kind()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return set_error(INTERFERO_ERR_MALFORMED, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(INTERFERO_ERR_NUMERICAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(INTERFERO_ERR_NUMERICAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) fail(ErrorKind::InvalidArgument, what);
}

Tolerances tolerances_from(const char* spec) {
    const Tolerances base = Tolerances::from_env();
    return spec == nullptr ? base : Tolerances::parse(spec, base);
}

SimulationConfig to_config(const interfero_sim_config& c) {
    SimulationConfig cfg;
    cfg.mode = parse_mode(c.mode ? c.mode : "polarization");
    cfg.k_channels = c.k_channels;
    cfg.alpha1 = c.alpha1;
    cfg.alpha2 = c.alpha2;
    cfg.mu = c.mu;
    cfg.noise = c.noise;
    cfg.seed = c.seed;
    if (c.reference) cfg.reference = c.reference->value;
    return cfg;
}

Mode infer_mode(const MeasurementSet& m) {
    if (m.reference) return m.reference->signal ? Mode::KnownReference : Mode::UnknownReference;
    if (m.channels.size() == 2) return Mode::TwoRotation;
    return Mode::Polarization;
}

void compare(RoundTripReport& rep, const Signal& truth, const Signal& got, bool trivial) {
    if (trivial) {
        if (auto w = trivially_equivalent(truth, got, 1.0)) {
            const Signal aligned = apply(*w, truth);
            rep.rotation = w->rotation;
            rep.max_err = (aligned - got).max_abs() / std::max(got.max_abs(), 1e-300);
        } else {
            rep.max_err = std::numeric_limits<double>::infinity();
        }
        return;
    }
    const RotationFit fit = fit_rotation(truth, got);
    rep.rotation = fit.rotation;
    rep.max_err = (got.offset() == truth.offset() && got.length() == truth.length())
                      ? fit.max_rel_err
                      : std::numeric_limits<double>::infinity();
}

}  // namespace

extern "C" {

const char* interfero_last_error(void) { return g_last_error.c_str(); }

const char* interfero_version(void) { return "1.0.0"; }

void interfero_string_free(char* s) { delete[] s; }

interfero_status interfero_signal_create(int offset, const double* re, const double* im, size_t n,
                                         interfero_signal** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(n == 0 || re != nullptr, "null coefficient array");
        std::vector<cplx> c(n);
        for (size_t k = 0; k < n; ++k) c[k] = cplx(re[k], im ? im[k] : 0.0);
        *out = new interfero_signal{Signal(offset, std::move(c))};
    });
}

interfero_status interfero_signal_from_json(const char* text, interfero_signal** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new interfero_signal{signal_from_json(parse_json(text))};
    });
}

interfero_status interfero_signal_to_json(const interfero_signal* x, char** out) {
    return guarded([&] {
        require(x != nullptr && out != nullptr, "null argument");
        *out = dup_string(signal_to_json(x->value).dump());
    });
}

void interfero_signal_free(interfero_signal* x) { delete x; }

int interfero_signal_offset(const interfero_signal* x) { return x ? x->value.offset() : 0; }

size_t interfero_signal_length(const interfero_signal* x) {
    return x ? static_cast<size_t>(x->value.length()) : 0;
}

interfero_status interfero_signal_coeffs(const interfero_signal* x, double* re, double* im, size_t cap) {
    return guarded([&] {
        require(x != nullptr, "null signal");
        const auto c = x->value.coeffs();
        const size_t n = std::min(cap, c.size());
        require(n == 0 || (re != nullptr && im != nullptr), "null output array");
        for (size_t k = 0; k < n; ++k) {
            re[k] = c[k].real();
            im[k] = c[k].imag();
        }
    });
}

interfero_status interfero_random_signal(int n, uint64_t seed, int offset_range, interfero_signal** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        std::mt19937_64 rng(seed);
        *out = new interfero_signal{random_signal(n, rng, offset_range)};
    });
}

interfero_status interfero_measurement_from_json(const char* text, interfero_measurement** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new interfero_measurement{measurement_from_json(parse_json(text))};
    });
}

interfero_status interfero_measurement_to_json(const interfero_measurement* m, char** out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = dup_string(measurement_to_json(m->value).dump());
    });
}

void interfero_measurement_free(interfero_measurement* m) { delete m; }

size_t interfero_measurement_value_count(const interfero_measurement* m) {
    return m ? m->value.value_count() : 0;
}

size_t interfero_measurement_grid_size(const interfero_measurement* m) {
    return m ? m->value.grid.size() : 0;
}

size_t interfero_measurement_channel_count(const interfero_measurement* m) {
    return m ? m->value.channels.size() : 0;
}

void interfero_sim_config_default(interfero_sim_config* cfg) {
    if (!cfg) return;
    const SimulationConfig d;
    cfg->mode = "polarization";
    cfg->k_channels = d.k_channels;
    cfg->alpha1 = d.alpha1;
    cfg->alpha2 = d.alpha2;
    cfg->mu = d.mu;
    cfg->noise = d.noise;
    cfg->seed = d.seed;
    cfg->reference = nullptr;
}

interfero_status interfero_simulate(const interfero_signal* x, const interfero_sim_config* cfg,
                                    interfero_measurement** out) {
    return guarded([&] {
        require(x != nullptr && cfg != nullptr && out != nullptr, "null argument");
        const Tolerances tol = Tolerances::from_env();
        *out = new interfero_measurement{simulate(x->value, to_config(*cfg), tol.rotation_pair)};
    });
}

interfero_status interfero_reconstruct(const interfero_measurement* m, const char* mode, int window,
                                       const char* tolerances, const interfero_signal* truth,
                                       char** result) {
    return guarded([&] {
        require(m != nullptr && result != nullptr, "null argument");
        const MeasurementSet& ms = m->value;
        const Mode md = mode ? parse_mode(mode) : infer_mode(ms);
        const Tolerances tol = tolerances_from(tolerances);

        RoundTripReport rep;
        rep.mode = md;
        rep.max_err = std::numeric_limits<double>::quiet_NaN();
        json signals = json::array();
        json pairs = json::array();
        json extra = json::object();

        switch (md) {
        case Mode::Polarization:
        case Mode::TwoRotation: {
            const auto rec = recover_self_interference(
                ms, md == Mode::Polarization ? Extraction::Polarization : Extraction::TwoRotation, tol);
            signals.push_back(signal_to_json(rec.signal));
            extra = {{"omega0", rec.omega0},
                     {"support_length", rec.support_length},
                     {"values_consumed", rec.values_consumed}};
            rep.n0 = rec.signal.offset();
            rep.success = true;
            if (truth) {
                compare(rep, truth->value, rec.signal, false);
                rep.success = rep.max_err <= tol.equivalence;
            }
            break;
        }
        case Mode::KnownReference: {
            const int w = window > 0 ? window : ms.support_bound + 1;
            const auto cands = recover_known_reference(ms, w, tol);
            for (const Signal& c : cands) signals.push_back(signal_to_json(c));
            rep.n0 = cands.front().offset();
            rep.success = true;
            if (truth) {
                rep.success = false;
                double best = std::numeric_limits<double>::infinity();
                for (const Signal& c : cands) {
                    RoundTripReport r;
                    compare(r, truth->value, c, false);
                    if (r.max_err < best) {
                        best = r.max_err;
                        rep.rotation = r.rotation;
                        rep.n0 = c.offset();
                    }
                }
                rep.max_err = best;
                rep.success = best <= tol.equivalence;
            }
            break;
        }
        case Mode::UnknownReference: {
            const auto found = resolve_unknown_reference(ms, tol);
            for (const SignalPair& p : found) {
                signals.push_back(signal_to_json(p.x));
                pairs.push_back({{"x", signal_to_json(p.x)}, {"h", signal_to_json(p.h)}});
            }
            rep.n0 = found.front().x.offset();
            rep.success = found.size() == 1;
            if (truth) {
                compare(rep, truth->value, found.front().x, true);
                rep.success = rep.success && rep.max_err <= tol.equivalence;
            }
            break;
        }
        }

        json out = {{"mode", to_string(md)}, {"signals", signals}, {"report", report_to_json(rep)}};
        if (!pairs.empty()) out["pairs"] = pairs;
        for (auto& [k, v] : extra.items()) out[k] = v;
        *result = dup_string(out.dump());
    });
}

interfero_status interfero_enumerate(const char* input_json, int max_n, const char* tolerances, char** result) {
    return guarded([&] {
        require(input_json != nullptr && result != nullptr, "null argument");
        const json in = parse_json(input_json);
        const Tolerances tol = tolerances_from(tolerances);
        TrigPoly a;
        if (in.is_object() && in.contains("intensity")) {
            a = intensity_from_json(in);
        } else {
            const Signal x = signal_from_json(in);
            if (x.is_zero()) fail(ErrorKind::Malformed, "zero signal");
            a = intensity_function(x);
        }
        const Enumeration e = enumerate_ambiguities(a, tol, max_n > 0 ? max_n : 22);
        *result = dup_string(enumeration_to_json(e).dump());
    });
}

interfero_status interfero_roundtrip(const interfero_signal* x, const interfero_sim_config* cfg, int window,
                                     const char* tolerances, interfero_report* out) {
    return guarded([&] {
        require(x != nullptr && cfg != nullptr && out != nullptr, "null argument");
        RoundTripConfig rc;
        rc.sim = to_config(*cfg);
        rc.tol = tolerances_from(tolerances);
        rc.window = window;
        const RoundTripReport r = verify_round_trip(x->value, rc);
        out->success = r.success ? 1 : 0;
        out->rotation = r.rotation;
        out->max_err = r.max_err;
        out->n0 = r.n0;
        out->status = r.error_kind ? static_cast<interfero_status>(*r.error_kind) : INTERFERO_OK;
        out->values_consumed = r.values_consumed;
        std::snprintf(out->message, sizeof out->message, "%s", r.message.c_str());
    });
}

int interfero_check_mu(double mu, int n, double tol) { return check_mu(mu, n, tol) ? 1 : 0; }

double interfero_default_mu(void) { return default_mu(); }

}  // extern "C"
