#pragma once

#include <vector>

#include "interfero/signal.hpp"
#include "interfero/tolerances.hpp"
#include "interfero/trigpoly_fit.hpp"

namespace interfero {

/// A zero of the associated polynomial together with its reflection
/// 1/conj(first). Flipping a pair swaps which member the signal's own
/// polynomial carries.
struct ZeroPair {
    cplx first;
    cplx second;
};

/// Zero structure shared by every signal with a given Fourier intensity.
struct AmbiguityCatalog {
    std::vector<ZeroPair> zero_pairs;
    /// Unimodular zeros, each listed once (they are self-paired).
    std::vector<cplx> unit_circle_zeros;
    /// l2 norm shared by all solutions, sqrt(a[0]).
    double scale = 0.0;
    int origin_multiplicity = 0;
    int support_length = 1;
};

/// p(z) = sum_k a[k-(N-1)] z^k, so that p(e^{-iw}) = e^{-iw(N-1)} F a(w).
/// Throws InvalidArgument ("untrimmed intensity") when a[N-1] vanishes.
AlgebraicPoly associated_polynomial(const TrigPoly& a);

/// Throws Malformed ("not an intensity") unless `a` is Hermitian and
/// nonnegative on a dense grid up to tol * a[0].
void require_intensity(const TrigPoly& a, double tol);

/// Zero pairs from the roots of the associated polynomial; each pair lists
/// the root inside the unit disc first.
AmbiguityCatalog catalog_from_intensity(const TrigPoly& a, const Tolerances& tol = {});

/// Zero pairs ordered so that the all-zero selection reproduces x (up to
/// rotation and shift).
AmbiguityCatalog catalog_from_signal(const Signal& x, const Tolerances& tol = {});

/// Signal whose zeros are the selected pair members (bit set = second
/// member) plus the unit-circle zeros, normalized to the catalog scale, at
/// offset 0 with a real positive first coefficient.
Signal flip_candidate(const AmbiguityCatalog& catalog, const std::vector<bool>& selection);

struct Enumeration {
    AmbiguityCatalog catalog;
    std::vector<Signal> representatives;
};

/// One canonical representative per non-trivial equivalence class of
/// signals sharing the intensity `a`. Coinciding zero pairs are grouped so
/// that only distinct flip counts are generated, and selections related by
/// a global flip (conjugate reflection) are visited once.
///
/// Throws InvalidArgument when N exceeds `max_support` (hard cap 22).
Enumeration enumerate_ambiguities(const TrigPoly& a, const Tolerances& tol = {},
                                  int max_support = 22);

/// Every distinct flip of the catalog, including globally flipped
/// (conjugate-reflected) variants. Used when the reflection is not a free
/// gauge, e.g. relative to a second signal.
std::vector<Signal> all_flip_candidates(const AmbiguityCatalog& catalog, const Tolerances& tol = {});

/// Upper bound 2^{N-2} on the number of non-trivial classes (1 for N <= 2).
long long ambiguity_bound(int support_length);

}  // namespace interfero
