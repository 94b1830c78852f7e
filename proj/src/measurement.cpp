#include "interfero/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "interfero/error.hpp"

namespace interfero {

std::size_t MeasurementSet::value_count() const {
    std::size_t n = base.size();
    for (const auto& c : channels) n += c.values.size();
    if (reference) n += reference->base_h.size() + reference->interference.size();
    return n;
}

namespace {

void check_values(const std::vector<double>& v, std::size_t n, const char* what) {
    if (v.size() != n)
        fail(ErrorKind::Malformed, std::string(what) + " length differs from the grid");
    for (double x : v)
        if (!std::isfinite(x) || x < 0.0)
            fail(ErrorKind::Malformed, std::string(what) + " holds a negative or non-finite value");
}

}  // namespace

void validate(const MeasurementSet& m) {
    const std::size_t n = m.grid.size();
    if (n == 0) fail(ErrorKind::Malformed, "empty grid");
    if (m.support_bound < 0 || n < static_cast<std::size_t>(2 * m.support_bound + 1))
        fail(ErrorKind::Malformed, "grid too small for the support bound");
    std::vector<double> w;
    for (double g : m.grid) {
        if (!std::isfinite(g)) fail(ErrorKind::Malformed, "non-finite grid node");
        double r = std::fmod(g, 2.0 * std::numbers::pi);
        if (r < 0) r += 2.0 * std::numbers::pi;
        w.push_back(r);
    }
    std::sort(w.begin(), w.end());
    for (std::size_t k = 1; k < w.size(); ++k)
        if (w[k] - w[k - 1] <= 1e-12) fail(ErrorKind::Malformed, "repeated grid node");
    check_values(m.base, n, "base");
    for (const auto& c : m.channels) {
        if (!std::isfinite(c.alpha) || !std::isfinite(c.mu))
            fail(ErrorKind::Malformed, "non-finite channel parameters");
        check_values(c.values, n, "channel");
    }
    if (m.reference) {
        check_values(m.reference->base_h, n, "base_h");
        check_values(m.reference->interference, n, "interference");
    }
}

std::vector<double> default_grid(int support_length) {
    const int count = 2 * std::max(support_length, 1) - 1;
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        g[static_cast<std::size_t>(k)] = -std::numbers::pi + 2.0 * std::numbers::pi * k / count;
    return g;
}

std::vector<double> simulate_base(const Signal& x, const std::vector<double>& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) v[k] = std::abs(dtft_eval(x, grid[k]));
    return v;
}

std::vector<double> simulate_self_interference(const Signal& x, double alpha, double mu,
                                               const std::vector<double>& grid) {
    const cplx rot = std::polar(1.0, alpha);
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        v[k] = std::abs(dtft_eval(x, grid[k]) + rot * dtft_eval(x, grid[k] - mu));
    return v;
}

std::vector<double> simulate_reference_interference(const Signal& x, const Signal& h,
                                                    const std::vector<double>& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        v[k] = std::abs(dtft_eval(x, grid[k]) + dtft_eval(h, grid[k]));
    return v;
}

std::vector<double> polarization_alphas(int k_channels) {
    std::vector<double> a(static_cast<std::size_t>(k_channels));
    for (int k = 0; k < k_channels; ++k)
        a[static_cast<std::size_t>(k)] = -2.0 * std::numbers::pi * k / k_channels;
    return a;
}

const char* to_string(Mode mode) noexcept {
    switch (mode) {
    case Mode::Polarization: return "polarization";
    case Mode::TwoRotation: return "two-rotation";
    case Mode::KnownReference: return "known-ref";
    case Mode::UnknownReference: return "unknown-ref";
    }
    return "?";
}

Mode parse_mode(const std::string& name) {
    if (name == "polarization") return Mode::Polarization;
    if (name == "two-rotation") return Mode::TwoRotation;
    if (name == "known-ref") return Mode::KnownReference;
    if (name == "unknown-ref") return Mode::UnknownReference;
    fail(ErrorKind::InvalidArgument, "unknown mode '" + name + "'");
}

double default_mu() {
    const double mu = 2.0 * std::numbers::pi * (std::sqrt(5.0) - 1.0) / 2.0;
    return mu > std::numbers::pi ? 2.0 * std::numbers::pi - mu : mu;
}

MeasurementSet simulate(const Signal& x, const SimulationConfig& cfg, double rotation_floor) {
    if (x.is_zero()) fail(ErrorKind::InvalidArgument, "empty signal");
    const double mu = cfg.mu == 0.0 ? default_mu() : cfg.mu;
    MeasurementSet m;
    int length = x.length();

    switch (cfg.mode) {
    case Mode::Polarization:
        if (cfg.k_channels < 3) fail(ErrorKind::InvalidArgument, "polarization requires K >= 3");
        break;
    case Mode::TwoRotation:
        if (std::abs(std::sin(cfg.alpha1 - cfg.alpha2)) < rotation_floor)
            fail(ErrorKind::InvalidArgument, "degenerate rotation pair");
        break;
    case Mode::KnownReference:
    case Mode::UnknownReference: {
        if (!cfg.reference || cfg.reference->is_zero())
            fail(ErrorKind::InvalidArgument, "reference modes need a nonzero reference signal");
        const Signal sum = x + *cfg.reference;
        length = std::max({length, cfg.reference->length(), sum.is_zero() ? 1 : sum.length()});
        break;
    }
    }

    m.grid = default_grid(length);
    m.support_bound = length - 1;
    m.base = simulate_base(x, m.grid);

    switch (cfg.mode) {
    case Mode::Polarization:
        for (double a : polarization_alphas(cfg.k_channels))
            m.channels.push_back({a, mu, simulate_self_interference(x, a, mu, m.grid)});
        break;
    case Mode::TwoRotation:
        m.channels.push_back({cfg.alpha1, mu, simulate_self_interference(x, cfg.alpha1, mu, m.grid)});
        m.channels.push_back({cfg.alpha2, mu, simulate_self_interference(x, cfg.alpha2, mu, m.grid)});
        break;
    case Mode::KnownReference:
    case Mode::UnknownReference: {
        ReferenceBlock ref;
        if (cfg.mode == Mode::KnownReference) ref.signal = *cfg.reference;
        ref.base_h = simulate_base(*cfg.reference, m.grid);
        ref.interference = simulate_reference_interference(x, *cfg.reference, m.grid);
        m.reference = std::move(ref);
        break;
    }
    }
    if (cfg.noise > 0.0) return add_noise(m, cfg.noise, cfg.seed);
    return m;
}

MeasurementSet add_noise(const MeasurementSet& m, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) fail(ErrorKind::InvalidArgument, "noise level must be nonnegative");
    MeasurementSet out = m;
    if (sigma == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> eps(0.0, sigma);
    auto perturb = [&](std::vector<double>& v) {
        for (double& x : v) x = std::max(0.0, x * (1.0 + eps(rng)));
    };
    perturb(out.base);
    for (auto& c : out.channels) perturb(c.values);
    if (out.reference) {
        perturb(out.reference->base_h);
        perturb(out.reference->interference);
    }
    return out;
}

}  // namespace interfero
