#pragma once

#include <span>
#include <vector>

#include "interfero/measurement.hpp"
#include "interfero/signal.hpp"
#include "interfero/tolerances.hpp"

namespace interfero {

/// conj(z1) z2 from the K magnitudes |z1 + zeta_K^{-j} z2|, j = 0..K-1.
/// Throws Admissibility for K < 3 and InvalidArgument when values.size() != K.
cplx polarize(std::span<const double> values, int k_channels);

/// Generalized form on squared magnitudes |z1 + e^{i alpha_j} z2|^2. Valid
/// whenever sum_j e^{-i alpha_j} = sum_j e^{-2i alpha_j} = 0, which holds for
/// any K >= 3 equispaced rotations.
cplx polarize_squared(std::span<const double> squared, std::span<const double> alphas);

/// Phase difference phi(w - mu) - phi(w) in (-pi, pi] from two interference
/// magnitudes I1, I2 with rotations alpha1, alpha2 and the base magnitudes
/// m1 = |F x(w)|, m2 = |F x(w - mu)|.
///
/// Throws Admissibility ("degenerate rotation pair") when
/// |sin(alpha1 - alpha2)| < rotation_tol, Numerical ("vanishing intensity at
/// node") when m1 or m2 is below magnitude_tol.
double two_rotation_phase_diff(double i1, double i2, double m1, double m2, double alpha1,
                               double alpha2, double rotation_tol = 1e-6,
                               double magnitude_tol = 0.0);

enum class Extraction { Polarization, TwoRotation };

/// Channels of a self-interference measurement set fitted as trigonometric
/// polynomials so that relative phases can be read at any frequency.
class ChannelModel {
public:
    ChannelModel(const MeasurementSet& m, Extraction mode, const Tolerances& tol = {});

    double mu() const noexcept { return mu_; }
    /// Support length estimated from the base intensity.
    int support_length() const noexcept { return support_length_; }
    /// Number of scalar magnitudes read from the measurement set.
    std::size_t values_consumed() const noexcept { return consumed_; }
    double max_base() const noexcept { return max_base_; }
    const TrigPoly& base_intensity() const noexcept { return base_sq_; }

    /// |F x(w)| from the fitted base intensity.
    double magnitude(double w) const;
    /// e^{i(phi(w - mu) - phi(w))}.
    cplx relative_phase(double w) const;

private:
    Extraction mode_;
    Tolerances tol_;
    double mu_ = 0.0;
    int support_length_ = 1;
    std::size_t consumed_ = 0;
    double max_base_ = 0.0;
    TrigPoly base_sq_;
    std::vector<TrigPoly> channel_sq_;
    std::vector<double> alphas_;
};

/// One-shot relative phase at w; builds a ChannelModel internally.
cplx relative_phase_from_channels(const MeasurementSet& m, double w, Extraction mode,
                                  const Tolerances& tol = {});

}  // namespace interfero
