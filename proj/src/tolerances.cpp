#include "interfero/tolerances.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "interfero/error.hpp"

namespace interfero {

namespace {

double parse_number(std::string_view text, std::string_view key) {
    std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !(v >= 0.0))
        fail(ErrorKind::InvalidArgument, "bad tolerance value for '" + std::string(key) + "': " + s);
    return v;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Tolerances Tolerances::for_noise(double sigma) const {
    Tolerances t = *this;
    if (!(sigma > 0.0)) return t;
    const double loose = 1e3 * sigma;
    t.fit_residual = std::max(t.fit_residual, loose);
    t.prony_residual = std::max(t.prony_residual, loose);
    t.intensity_match = std::max(t.intensity_match, loose);
    t.equivalence = std::max(t.equivalence, loose);
    t.prony_discard = std::max(t.prony_discard, 10.0 * sigma);
    t.prony_rank = std::max(t.prony_rank, sigma);
    t.support = std::max(t.support, 10.0 * sigma);
    t.pairing = std::max(t.pairing, loose);
    return t;
}

Tolerances Tolerances::parse(std::string_view overrides) { return parse(overrides, Tolerances{}); }

Tolerances Tolerances::parse(std::string_view overrides, const Tolerances& base) {
    Tolerances t = base;
    while (!overrides.empty()) {
        const std::size_t comma = overrides.find(',');
        std::string_view item = strip(overrides.substr(0, comma));
        overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            t.equivalence = parse_number(item, "equivalence");
            continue;
        }
        const std::string_view key = strip(item.substr(0, eq));
        const double v = parse_number(strip(item.substr(eq + 1)), key);
        if (key == "fit_residual") t.fit_residual = v;
        else if (key == "support") t.support = v;
        else if (key == "vanishing") t.vanishing = v;
        else if (key == "rotation_pair") t.rotation_pair = v;
        else if (key == "mu_admissibility") t.mu_admissibility = v;
        else if (key == "path_min") t.path_min = v;
        else if (key == "prony_rank") t.prony_rank = v;
        else if (key == "prony_discard") t.prony_discard = v;
        else if (key == "prony_residual") t.prony_residual = v;
        else if (key == "lattice") t.lattice = v;
        else if (key == "max_offset") t.max_offset = static_cast<int>(v);
        else if (key == "unit_circle") t.unit_circle = v;
        else if (key == "pairing") t.pairing = v;
        else if (key == "equivalence") t.equivalence = v;
        else if (key == "intensity_match") t.intensity_match = v;
        else if (key == "zero_disjoint") t.zero_disjoint = v;
        else if (key == "vandermonde_cond") t.vandermonde_cond = v;
        else fail(ErrorKind::InvalidArgument, "unknown tolerance key '" + std::string(key) + "'");
    }
    return t;
}

Tolerances Tolerances::from_env() {
    const char* env = std::getenv("INTERFERO_TOL");
    if (env == nullptr || *env == '\0') return {};
    return parse(env);
}

}  // namespace interfero
