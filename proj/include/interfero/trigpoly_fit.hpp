#pragma once

#include <span>
#include <vector>

#include "interfero/signal.hpp"

namespace interfero {

struct Sample {
    double w = 0.0;
    cplx value;
};

/// Least-squares fit of a trigonometric polynomial of the given degree to
/// samples at pairwise distinct nodes (mod 2pi). With exactly 2*degree+1
/// samples this is interpolation. Real-valued samples produce Hermitian
/// coefficients.
///
/// Throws InvalidArgument for too few samples or repeated nodes
/// ("singular interpolation"), Numerical when an oversampled fit leaves a
/// relative RMS residual above `residual_tol` ("degree too small").
TrigPoly fit_trig_poly(std::span<const Sample> samples, int degree,
                       double residual_tol = 1e-6);

/// Convenience overload for real values on a grid.
TrigPoly fit_trig_poly(std::span<const double> grid, std::span<const double> values,
                       int degree, double residual_tol = 1e-6);

/// Support length N = 1 + max{|n| : |a[n]| > tol * max|a|} of the signal
/// whose squared Fourier intensity |F x|^2 was sampled.
int estimate_support_length(std::span<const Sample> squared_intensity, int degree_bound,
                            double tol = 1e-8);

/// Same, from an already fitted intensity.
int support_length_of(const TrigPoly& intensity, double tol = 1e-8);

/// Real trigonometric polynomial T with T^2 ~ q for a nonnegative Hermitian
/// q, determined up to sign. Start values come from pairing the (doubled)
/// roots of the associated polynomial of q; Gauss-Newton refines the
/// coefficients. `relative_residual` reports max|T^2 - q| / max|q|.
struct TrigSqrt {
    TrigPoly root;
    double relative_residual = 0.0;
};
TrigSqrt real_trig_sqrt(const TrigPoly& q, double trim_tol = 1e-12);

/// Complex polynomial with ascending coefficients; the leading coefficient
/// is nonzero (exact trailing zeros are dropped on construction).
class AlgebraicPoly {
public:
    AlgebraicPoly() = default;
    explicit AlgebraicPoly(std::vector<cplx> coeffs);

    /// Monic-scaled product lead * prod (z - r).
    static AlgebraicPoly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    cplx lead() const noexcept { return coeffs_.back(); }

    cplx eval(cplx z) const noexcept;
    /// p(z) and p'(z) in one Horner sweep.
    std::pair<cplx, cplx> eval_with_derivative(cplx z) const noexcept;
    /// sum |c_k| |z|^k, the scale used for backward-error tests.
    double magnitude_bound(cplx z) const noexcept;

private:
    std::vector<cplx> coeffs_;
};

/// All roots with multiplicity. Aberth-Ehrlich simultaneous iteration
/// followed by Newton polishing. Exact zero roots (vanishing low-order
/// coefficients) are split off first.
///
/// Throws InvalidArgument for degree < 1 and Numerical ("root finding
/// failed") when the iteration does not converge.
std::vector<cplx> poly_roots(const AlgebraicPoly& p, int max_iterations = 500);

}  // namespace interfero
