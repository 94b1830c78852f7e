#include "interfero/json_io.hpp"

#include <cmath>

#include "interfero/error.hpp"

namespace interfero {

namespace {

double finite_number(const json& v, const char* what) {
    if (!v.is_number()) fail(ErrorKind::Malformed, std::string(what) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ErrorKind::Malformed, std::string(what) + ": non-finite value");
    return d;
}

const json& member(const json& j, const char* key) {
    if (!j.is_object()) fail(ErrorKind::Malformed, std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorKind::Malformed, std::string("missing key '") + key + "'");
    return *it;
}

std::vector<double> real_array(const json& j, const char* what) {
    if (!j.is_array()) fail(ErrorKind::Malformed, std::string(what) + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const json& v : j) out.push_back(finite_number(v, what));
    return out;
}

std::vector<cplx> complex_array(const json& j, const char* what) {
    if (!j.is_array()) fail(ErrorKind::Malformed, std::string(what) + ": expected an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const json& v : j) {
        if (!v.is_array() || v.size() != 2)
            fail(ErrorKind::Malformed, std::string(what) + ": expected [re, im] pairs");
        out.emplace_back(finite_number(v[0], what), finite_number(v[1], what));
    }
    return out;
}

json complex_to_json(std::span<const cplx> c) {
    json out = json::array();
    for (const cplx& z : c) out.push_back({z.real(), z.imag()});
    return out;
}

int integer(const json& v, const char* what) {
    if (!v.is_number_integer()) fail(ErrorKind::Malformed, std::string(what) + ": expected an integer");
    return v.get<int>();
}

}  // namespace

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Malformed, std::string("JSON parse error: ") + e.what());
    }
}

json signal_to_json(const Signal& x) {
    return json{{"offset", x.offset()}, {"coeffs", complex_to_json(x.coeffs())}};
}

Signal signal_from_json(const json& j) {
    const int offset = integer(member(j, "offset"), "offset");
    std::vector<cplx> c = complex_array(member(j, "coeffs"), "coeffs");
    try {
        return Signal(offset, std::move(c));
    } catch (const Error& e) {
        fail(ErrorKind::Malformed, e.what());
    }
}

json measurement_to_json(const MeasurementSet& m) {
    json channels = json::array();
    for (const Channel& c : m.channels)
        channels.push_back({{"alpha", c.alpha}, {"mu", c.mu}, {"values", c.values}});
    json reference = nullptr;
    if (m.reference) {
        reference = {{"signal", m.reference->signal ? signal_to_json(*m.reference->signal) : json(nullptr)},
                     {"base_h", m.reference->base_h},
                     {"interference", m.reference->interference}};
    }
    return json{{"grid", m.grid},
                {"base", m.base},
                {"channels", channels},
                {"reference", reference},
                {"support_bound", m.support_bound}};
}

MeasurementSet measurement_from_json(const json& j) {
    MeasurementSet m;
    m.grid = real_array(member(j, "grid"), "grid");
    m.base = real_array(member(j, "base"), "base");
    const json& chans = member(j, "channels");
    if (!chans.is_array()) fail(ErrorKind::Malformed, "channels: expected an array");
    for (const json& c : chans) {
        Channel ch;
        ch.alpha = finite_number(member(c, "alpha"), "alpha");
        ch.mu = finite_number(member(c, "mu"), "mu");
        ch.values = real_array(member(c, "values"), "values");
        m.channels.push_back(std::move(ch));
    }
    auto ref = j.find("reference");
    if (ref != j.end() && !ref->is_null()) {
        ReferenceBlock r;
        const json& s = member(*ref, "signal");
        if (!s.is_null()) r.signal = signal_from_json(s);
        r.base_h = real_array(member(*ref, "base_h"), "base_h");
        r.interference = real_array(member(*ref, "interference"), "interference");
        m.reference = std::move(r);
    }
    m.support_bound = integer(member(j, "support_bound"), "support_bound");
    validate(m);
    return m;
}

json report_to_json(const RoundTripReport& r) {
    json out{{"success", r.success},
             {"rotation", r.rotation},
             {"max_err", std::isfinite(r.max_err) ? json(r.max_err) : json(nullptr)},
             {"n0", r.n0},
             {"mode", to_string(r.mode)}};
    if (r.error_kind) out["error"] = {{"kind", to_string(*r.error_kind)}, {"message", r.message}};
    return out;
}

json catalog_to_json(const AmbiguityCatalog& c) {
    json pairs = json::array();
    for (const ZeroPair& p : c.zero_pairs)
        pairs.push_back({{p.first.real(), p.first.imag()}, {p.second.real(), p.second.imag()}});
    return json{{"zero_pairs", pairs},
                {"unit_circle_zeros", complex_to_json(c.unit_circle_zeros)},
                {"scale", c.scale},
                {"origin_multiplicity", c.origin_multiplicity},
                {"support_length", c.support_length}};
}

json enumeration_to_json(const Enumeration& e) {
    json reps = json::array();
    for (const Signal& s : e.representatives) reps.push_back(signal_to_json(s));
    return json{{"N", e.catalog.support_length},
                {"bound", ambiguity_bound(e.catalog.support_length)},
                {"count", e.representatives.size()},
                {"catalog", catalog_to_json(e.catalog)},
                {"representatives", reps}};
}

TrigPoly intensity_from_json(const json& j) {
    const json& in = member(j, "intensity");
    if (in.is_array()) {
        std::vector<cplx> c = complex_array(in, "intensity");
        if (c.size() % 2 == 0) fail(ErrorKind::Malformed, "intensity: expected an odd number of coefficients");
        const int d = static_cast<int>(c.size() / 2);
        return TrigPoly(d, std::move(c));
    }
    const Signal s = signal_from_json(in);
    if (s.is_zero()) fail(ErrorKind::Malformed, "intensity: zero sequence");
    return TrigPoly::from_sequence(s);
}

}  // namespace interfero
