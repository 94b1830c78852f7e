#pragma once

#include <span>
#include <vector>

#include "interfero/signal.hpp"
#include "interfero/tolerances.hpp"

namespace interfero {

/// f(k) = sum_j c_j e^{-i nu_j k}, terms ordered by frequency nu in (-pi, pi].
struct ExponentialSum {
    struct Term {
        double frequency = 0.0;
        cplx coefficient;
    };
    std::vector<Term> terms;

    cplx eval(double k) const;
};

/// Prony's method on 2N equispaced samples f(0..2N-1): rank-revealing
/// linear prediction, roots of the prediction polynomial, then a
/// least-squares Vandermonde solve for the coefficients. Nodes are projected
/// onto the unit circle. Terms below prony_discard * max|c| are dropped.
///
/// Throws InvalidArgument when samples.size() != 2N, Numerical ("samples
/// not an N-term exponential sum") when the fitted model misses the samples
/// by more than prony_residual * max|f|.
ExponentialSum prony_recover(std::span<const cplx> samples, int n_terms, const Tolerances& tol = {});

/// True iff dist(q mu / 2pi, Z) > tol for all q = 1..N-1.
bool check_mu(double mu, int support_length, double tol = 1e-6);

/// Integer positions m_j with e^{-i nu_j} ~ e^{-i mu m_j}, all inside a
/// window of `support_length`, returned as a signal x[m_j] = c_j.
///
/// Candidates are found by lattice rounding m = round((nu + 2 pi l) / mu)
/// over the branches l reaching |m| <= tol.max_offset + support_length.
/// Throws Numerical ("frequency-lattice mismatch") when no consistent
/// assignment exists within tol.lattice radians, or when two different
/// assignments fit equally.
Signal frequencies_to_support(const ExponentialSum& es, double mu, int support_length,
                              const Tolerances& tol = {});

/// Coefficients c_n of f(k) = sum_{n in support} c_n e^{-i k mu n} by least
/// squares on the known node set.
///
/// Throws Admissibility when the support span fails check_mu, Numerical
/// ("Vandermonde near-singular") when the node matrix condition number
/// exceeds tol.vandermonde_cond, Numerical ("model mismatch") when the
/// relative residual exceeds tol.prony_residual.
std::vector<cplx> solve_known_support(std::span<const cplx> samples, double mu,
                                      std::span<const int> support, const Tolerances& tol = {});

}  // namespace interfero
