#include "interfero/phase_extract.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "interfero/error.hpp"
#include "interfero/trigpoly_fit.hpp"

namespace interfero {

cplx polarize(std::span<const double> values, int k_channels) {
    if (k_channels < 3) fail(ErrorKind::Admissibility, "polarization requires K >= 3");
    if (values.size() != static_cast<std::size_t>(k_channels))
        fail(ErrorKind::InvalidArgument, "polarization needs exactly K magnitudes");
    cplx acc{};
    for (int j = 0; j < k_channels; ++j) {
        const double v = values[static_cast<std::size_t>(j)];
        acc += std::polar(v * v, 2.0 * std::numbers::pi * j / k_channels);
    }
    return acc / static_cast<double>(k_channels);
}

cplx polarize_squared(std::span<const double> squared, std::span<const double> alphas) {
    if (alphas.size() < 3) fail(ErrorKind::Admissibility, "polarization requires K >= 3");
    if (squared.size() != alphas.size())
        fail(ErrorKind::InvalidArgument, "one squared magnitude per rotation required");
    cplx acc{};
    for (std::size_t j = 0; j < alphas.size(); ++j) acc += std::polar(squared[j], -alphas[j]);
    return acc / static_cast<double>(alphas.size());
}

double two_rotation_phase_diff(double i1, double i2, double m1, double m2, double alpha1,
                               double alpha2, double rotation_tol, double magnitude_tol) {
    const double det = std::sin(alpha1 - alpha2);
    if (std::abs(det) < rotation_tol) fail(ErrorKind::Admissibility, "degenerate rotation pair");
    if (m1 <= magnitude_tol || m2 <= magnitude_tol)
        fail(ErrorKind::Numerical, "vanishing intensity at node");
    // |F x(w) + e^{ia} F x(w-mu)|^2 = m1^2 + m2^2 + 2 m1 m2 Re e^{i(delta + a)}
    const double r1 = (i1 * i1 - m1 * m1 - m2 * m2) / (2.0 * m1 * m2);
    const double r2 = (i2 * i2 - m1 * m1 - m2 * m2) / (2.0 * m1 * m2);
    // [cos a1  -sin a1] [cos d]   [r1]
    // [cos a2  -sin a2] [sin d] = [r2]
    const double c = (std::sin(alpha1) * r2 - std::sin(alpha2) * r1) / det;
    const double s = (std::cos(alpha1) * r2 - std::cos(alpha2) * r1) / det;
    return std::atan2(s, c);
}

// ---------------------------------------------------------------------------

namespace {

TrigPoly fit_squared(const std::vector<double>& grid, const std::vector<double>& values, int degree,
                     double residual_tol) {
    std::vector<double> sq(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) sq[k] = values[k] * values[k];
    return fit_trig_poly(grid, sq, degree, residual_tol);
}

}  // namespace

ChannelModel::ChannelModel(const MeasurementSet& m, Extraction mode, const Tolerances& tol)
    : mode_(mode), tol_(tol) {
    validate(m);
    if (m.channels.empty()) fail(ErrorKind::InvalidArgument, "no interference channels");
    mu_ = m.channels.front().mu;
    for (const auto& c : m.channels)
        if (std::abs(c.mu - mu_) > 1e-12) fail(ErrorKind::Admissibility, "mixed modulation set");

    std::vector<const Channel*> used;
    if (mode == Extraction::Polarization) {
        if (m.channels.size() < 3) fail(ErrorKind::Admissibility, "polarization requires K >= 3");
        cplx s1{}, s2{};
        for (const auto& c : m.channels) {
            s1 += std::polar(1.0, -c.alpha);
            s2 += std::polar(1.0, -2.0 * c.alpha);
        }
        const double k = static_cast<double>(m.channels.size());
        if (std::abs(s1) > 1e-9 * k || std::abs(s2) > 1e-9 * k)
            fail(ErrorKind::Admissibility, "channels do not form a polarization family");
        for (const auto& c : m.channels) used.push_back(&c);
    } else {
        if (m.channels.size() < 2)
            fail(ErrorKind::InvalidArgument, "two-rotation extraction needs two channels");
        used = {&m.channels[0], &m.channels[1]};
        if (std::abs(std::sin(used[0]->alpha - used[1]->alpha)) < tol.rotation_pair)
            fail(ErrorKind::Admissibility, "degenerate rotation pair");
    }

    base_sq_ = fit_squared(m.grid, m.base, m.support_bound, tol.fit_residual);
    for (double v : m.base) max_base_ = std::max(max_base_, v);
    if (max_base_ == 0.0) fail(ErrorKind::Malformed, "zero intensity");
    support_length_ = support_length_of(base_sq_, tol.support);
    consumed_ = m.base.size();
    for (const Channel* c : used) {
        channel_sq_.push_back(fit_squared(m.grid, c->values, m.support_bound, tol.fit_residual));
        alphas_.push_back(c->alpha);
        consumed_ += c->values.size();
    }
}

double ChannelModel::magnitude(double w) const {
    return std::sqrt(std::max(0.0, base_sq_.eval_real(w)));
}

cplx ChannelModel::relative_phase(double w) const {
    const double m1 = magnitude(w);
    const double m2 = magnitude(w - mu_);
    const double floor = tol_.vanishing * max_base_;
    if (m1 <= floor || m2 <= floor) fail(ErrorKind::Numerical, "vanishing intensity at node");

    if (mode_ == Extraction::Polarization) {
        std::vector<double> sq(channel_sq_.size());
        for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = channel_sq_[j].eval_real(w);
        const cplx p = polarize_squared(sq, alphas_);
        if (std::abs(p) == 0.0) fail(ErrorKind::Numerical, "vanishing intensity at node");
        return p / std::abs(p);
    }
    const double i1 = std::sqrt(std::max(0.0, channel_sq_[0].eval_real(w)));
    const double i2 = std::sqrt(std::max(0.0, channel_sq_[1].eval_real(w)));
    return std::polar(1.0, two_rotation_phase_diff(i1, i2, m1, m2, alphas_[0], alphas_[1],
                                                   tol_.rotation_pair, floor));
}

cplx relative_phase_from_channels(const MeasurementSet& m, double w, Extraction mode,
                                  const Tolerances& tol) {
    return ChannelModel(m, mode, tol).relative_phase(w);
}

}  // namespace interfero
