#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "interfero/signal.hpp"

namespace interfero {

/// One interference channel |F x(w) + e^{i alpha} F x(w - mu)| on the grid.
struct Channel {
    double alpha = 0.0;
    double mu = 0.0;
    std::vector<double> values;
};

/// Interference with a second signal h: |F h| and |F x + F h| on the grid.
/// `signal` is present only for a known reference.
struct ReferenceBlock {
    std::optional<Signal> signal;
    std::vector<double> base_h;
    std::vector<double> interference;
};

/// Sampled magnitudes (not squared) on a common frequency grid.
struct MeasurementSet {
    std::vector<double> grid;
    std::vector<double> base;
    std::vector<Channel> channels;
    std::optional<ReferenceBlock> reference;
    /// Degree bound used when fitting any channel; grid.size() >= 2*bound+1.
    int support_bound = 0;

    /// Total number of scalar magnitudes held.
    std::size_t value_count() const;
};

/// Throws Malformed when lengths disagree, values are negative or
/// non-finite, nodes repeat, or the grid is too small for support_bound.
void validate(const MeasurementSet& m);

/// w_k = -pi + 2 pi k / (2N-1), k = 0..2N-2.
std::vector<double> default_grid(int support_length);

std::vector<double> simulate_base(const Signal& x, const std::vector<double>& grid);

std::vector<double> simulate_self_interference(const Signal& x, double alpha, double mu,
                                               const std::vector<double>& grid);

std::vector<double> simulate_reference_interference(const Signal& x, const Signal& h,
                                                    const std::vector<double>& grid);

/// Rotation angles -2 pi k / K of the K-channel polarization family.
std::vector<double> polarization_alphas(int k_channels);

enum class Mode { Polarization, TwoRotation, KnownReference, UnknownReference };

const char* to_string(Mode mode) noexcept;
/// Throws InvalidArgument for unknown names.
Mode parse_mode(const std::string& name);

struct SimulationConfig {
    Mode mode = Mode::Polarization;
    int k_channels = 3;
    double alpha1 = 0.0;
    double alpha2 = -1.5707963267948966;
    double mu = 0.0;  ///< 0 selects the default golden-ratio modulation
    std::optional<Signal> reference;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

/// 2 pi (sqrt(5) - 1) / 2 folded into (0, pi).
double default_mu();

/// Builds the full measurement set for one mode on the default grid. The
/// grid is sized for the longest signal involved (x, h or x + h).
/// Throws InvalidArgument for K < 3, a degenerate rotation pair
/// (|sin(alpha1 - alpha2)| < rotation_floor), or a missing reference.
MeasurementSet simulate(const Signal& x, const SimulationConfig& cfg,
                        double rotation_floor = 1e-6);

/// Multiplies every magnitude by (1 + eps), eps ~ N(0, sigma), clamps at
/// zero. Deterministic for a given seed.
MeasurementSet add_noise(const MeasurementSet& m, double sigma, std::uint64_t seed);

}  // namespace interfero
