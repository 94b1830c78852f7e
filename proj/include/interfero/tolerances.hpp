#pragma once

#include <string>
#include <string_view>

namespace interfero {

/// Every numerical threshold used by the reconstruction pipelines.
///
/// Relative thresholds are relative to the largest value of the quantity
/// they are compared against (max coefficient, max intensity, ...).
struct Tolerances {
    double fit_residual = 1e-6;      ///< relative RMS residual of an oversampled trig fit
    double support = 1e-8;           ///< relative cut for the support-length estimate
    double vanishing = 1e-9;         ///< relative magnitude floor at a phase node
    double rotation_pair = 1e-6;     ///< floor on |sin(alpha1 - alpha2)|
    double mu_admissibility = 1e-6;  ///< distance of q*mu/2pi from the integers
    double path_min = 1e-6;          ///< relative floor on the sampling-path minimum
    double prony_rank = 1e-10;       ///< relative singular value cut in linear prediction
    double prony_discard = 1e-8;     ///< relative coefficient cut for Prony terms
    double prony_residual = 1e-6;    ///< relative residual of the exponential sum model
    double lattice = 1e-3;           ///< radians, frequency-to-integer match
    int max_offset = 256;            ///< search bound for the support start |n0|
    double unit_circle = 1e-6;       ///< | |z| - 1 | below which a root is unimodular
    double pairing = 1e-5;           ///< relative mismatch allowed when pairing roots
    double equivalence = 1e-6;       ///< relative coefficient error for equivalence tests
    double intensity_match = 1e-8;   ///< relative coefficient error for intensity matches
    double zero_disjoint = 1e-6;     ///< min distance between zero sets of x and h
    double vandermonde_cond = 1e12;  ///< condition number limit for known-support solves

    /// Loosens the residual-type thresholds for data carrying relative noise
    /// of standard deviation `sigma`.
    Tolerances for_noise(double sigma) const;

    /// Parses "key=value,key=value" overrides; a bare number sets
    /// `equivalence`. Unknown keys throw InvalidArgument.
    static Tolerances parse(std::string_view overrides);
    static Tolerances parse(std::string_view overrides, const Tolerances& base);

    /// Defaults, overridden by the INTERFERO_TOL environment variable.
    static Tolerances from_env();
};

}  // namespace interfero
