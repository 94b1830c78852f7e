#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace interfero {

using cplx = std::complex<double>;

/// Finitely supported complex sequence x[n], stored from its first nonzero
/// sample. Construction trims exact zeros at both ends, so for a nonzero
/// signal the first and last stored coefficients are nonzero and length()
/// is the support length N. The zero signal has no coefficients.
class Signal {
public:
    Signal() = default;
    Signal(int offset, std::vector<cplx> coeffs);

    static Signal impulse(int at = 0, cplx value = 1.0);

    int offset() const noexcept { return offset_; }
    /// Index of the last stored sample.
    int last() const noexcept { return offset_ + length() - 1; }
    int length() const noexcept { return static_cast<int>(coeffs_.size()); }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    /// x[n]; zero outside the support.
    cplx operator[](int n) const noexcept;

    double max_abs() const noexcept;
    double energy() const noexcept;

    friend bool operator==(const Signal&, const Signal&) = default;

private:
    int offset_ = 0;
    std::vector<cplx> coeffs_;
};

/// Drops leading/trailing samples with |x[n]| <= rel_tol * max|x|.
Signal trimmed(const Signal& x, double rel_tol);

/// Hermitian trigonometric polynomial sum_{|n|<=d} a[n] e^{-i w n}.
/// Coefficients are stored densely from -degree to degree.
class TrigPoly {
public:
    TrigPoly() : coeffs_{cplx{}} {}
    TrigPoly(int degree, std::vector<cplx> coeffs);

    /// Wraps an autocorrelation-like sequence supported in [-d, d].
    static TrigPoly from_sequence(const Signal& a);

    int degree() const noexcept { return degree_; }
    cplx coeff(int n) const noexcept;
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    cplx eval(double w) const noexcept;
    /// Real part of eval(); exact for Hermitian coefficients.
    double eval_real(double w) const noexcept { return eval(w).real(); }

    double max_abs() const noexcept;
    bool is_hermitian(double rel_tol) const noexcept;
    /// Projection onto Hermitian coefficients, (a[n] + conj(a[-n])) / 2.
    TrigPoly hermitian_part() const;
    /// Lowers the degree while the outermost pair is below rel_tol * max|a|.
    TrigPoly trimmed(double rel_tol) const;
    /// Same polynomial with zero-padded coefficients up to `degree`.
    TrigPoly padded(int degree) const;
    /// Coefficients as a signal at offset -degree (trimmed form).
    Signal as_sequence() const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly& operator*=(cplx s);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(TrigPoly a, cplx s) { return a *= s; }
    /// Product of the two functions (coefficient convolution).
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

private:
    int degree_ = 0;
    std::vector<cplx> coeffs_;
};

/// Largest coefficient deviation max_n |a[n] - b[n]|.
double max_coeff_diff(const TrigPoly& a, const TrigPoly& b);

/// sum_n x[n] e^{-i w n}
cplx dtft_eval(const Signal& x, double w);

/// a[n] = sum_k conj(x[k]) x[k+n], support {-N+1, ..., N-1}.
Signal autocorrelation(const Signal& x);

/// |F x|^2 as a trigonometric polynomial of degree N-1.
TrigPoly intensity_function(const Signal& x);

/// Cross-correlation c[n] = sum_k conj(h[k]) x[k+n]; F c = F x * conj(F h).
Signal cross_correlation(const Signal& h, const Signal& x);

Signal rotate(const Signal& x, double alpha);
Signal shift(const Signal& x, int m);
/// conj(x[-n])
Signal conj_reflect(const Signal& x);
/// e^{i mu n} x[n]
Signal modulate(const Signal& x, double mu);
Signal scale(const Signal& x, cplx s);
Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);

/// y = e^{i rotation} * shift(reflected ? conj_reflect(x) : x, shift).
struct TrivialWitness {
    double rotation = 0.0;
    int shift = 0;
    bool reflected = false;
};

/// Tests whether y is a trivial ambiguity of x. The tolerance is relative
/// to max|y|; the rotation is read off the largest coefficient of x.
/// The unreflected match is tried first.
std::optional<TrivialWitness> trivially_equivalent(const Signal& x, const Signal& y,
                                                   double rel_tol);

/// e^{i rotation} * shift(reflected ? conj_reflect(x) : x, shift)
Signal apply(const TrivialWitness& w, const Signal& x);

/// Like trivially_equivalent() restricted to a pure rotation (no shift, no
/// reflection); returns the rotation.
std::optional<double> rotation_equivalent(const Signal& x, const Signal& y, double rel_tol);

/// Moves the signal to offset 0 and rotates the first coefficient onto the
/// positive real axis.
Signal canonical_representative(const Signal& x);

/// Least-squares rotation alpha minimizing ||y - e^{i alpha} x|| on a common
/// index grid, together with the residual max|y - e^{i alpha} x| / max|x|.
struct RotationFit {
    double rotation = 0.0;
    double max_rel_err = 0.0;
};
RotationFit fit_rotation(const Signal& x, const Signal& y);

}  // namespace interfero
