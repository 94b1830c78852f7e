#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "interfero/error.hpp"
#include "interfero/measurement.hpp"
#include "interfero/phase_extract.hpp"
#include "interfero/signal.hpp"
#include "interfero/tolerances.hpp"

namespace interfero {

struct SelfInterferenceRecovery {
    Signal signal;
    double omega0 = 0.0;  ///< gauge node, phase fixed to 0 there
    int support_length = 0;
    std::size_t values_consumed = 0;
};

/// Reconstructs x (up to a global rotation) from its base intensity and
/// self-interference channels sharing one modulation mu:
///   1. fit every channel as a trig polynomial of degree support_bound,
///   2. pick w0 maximizing min_k |F x(w0 + k mu)|, k = 0..2N-1,
///   3. chain relative phases from phi(w0) = 0 along the path,
///   4. Prony on the 2N path values, 5. map frequencies to integer
///   positions, 6. undo the e^{-i w0 n} factors.
///
/// Throws Admissibility when mu aliases support indices or the channels are
/// inadmissible, Numerical ("degenerate sampling path") when no start node
/// keeps the path above tol.path_min * max|F x|.
SelfInterferenceRecovery recover_self_interference(const MeasurementSet& m, Extraction mode,
                                                   const Tolerances& tol = {});

/// Candidates for x supported in {0, ..., window-1} from |F x|, |F(x + h)|
/// and a known reference h. At most two candidates; the second, when valid,
/// satisfies F x2 = conj(F x1) F h / conj(F h).
///
/// Throws InvalidArgument when the reference block or signal is missing,
/// Admissibility ("window too small") when the base intensity needs a
/// longer support than the window, Admissibility ("reference spectrum too
/// sparse") for a zero reference, Numerical when no candidate is valid.
std::vector<Signal> recover_known_reference(const MeasurementSet& m, int window,
                                            const Tolerances& tol = {});

struct SignalPair {
    Signal x;
    Signal h;
};

/// True iff q = T(p) for one trivial transform T applied to both signals.
bool jointly_equivalent(const SignalPair& p, const SignalPair& q, double rel_tol);

/// Joint witness mapping p onto q, if any.
std::optional<TrivialWitness> joint_witness(const SignalPair& p, const SignalPair& q,
                                            double rel_tol);

/// Brute-force search for (x, h) from |F x|, |F h|, |F(x + h)| sampled on
/// `grid`. Support lengths of 0 are estimated from the data.
///
/// Throws Admissibility ("hypothesis violated: shared zeros") when the
/// associated polynomials share a zero, Numerical ("inconsistent
/// measurements") when no candidate survives.
std::vector<SignalPair> resolve_unknown_reference(const std::vector<double>& grid,
                                                  const std::vector<double>& base_x,
                                                  const std::vector<double>& base_h,
                                                  const std::vector<double>& interference,
                                                  int degree_bound, int support_x = 0,
                                                  int support_h = 0, const Tolerances& tol = {});

std::vector<SignalPair> resolve_unknown_reference(const MeasurementSet& m, const Tolerances& tol = {});

/// Smallest distance between the zero sets of the associated polynomials
/// of two intensities (infinity when either has no zeros).
double zero_set_distance(const TrigPoly& a_x, const TrigPoly& a_h);

struct RoundTripConfig {
    SimulationConfig sim;
    Tolerances tol;
    /// Support window for known-reference recovery; 0 means x.last() + 1.
    int window = 0;
};

struct RoundTripReport {
    bool success = false;
    double rotation = 0.0;
    double max_err = 0.0;
    int n0 = 0;
    Mode mode = Mode::Polarization;
    std::optional<ErrorKind> error_kind;
    std::string message;
    std::size_t values_consumed = 0;
};

/// simulate -> reconstruct -> compare with x. Never throws for pipeline
/// errors; they are reported with their kind.
RoundTripReport verify_round_trip(const Signal& x, const RoundTripConfig& cfg);

/// Complex Gaussian coefficients with endpoint magnitudes >= 0.1 and offset
/// uniform in [-offset_range, offset_range].
Signal random_signal(int support_length, std::mt19937_64& rng, int offset_range = 0);

}  // namespace interfero
