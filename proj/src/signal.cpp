#include "interfero/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "interfero/error.hpp"

namespace interfero {

Signal::Signal(int offset, std::vector<cplx> coeffs) : offset_(offset) {
    std::size_t first = 0;
    while (first < coeffs.size() && coeffs[first] == cplx{}) ++first;
    std::size_t end = coeffs.size();
    while (end > first && coeffs[end - 1] == cplx{}) --end;
    if (first == end) {
        offset_ = 0;
        return;
    }
    for (const auto& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            fail(ErrorKind::InvalidArgument, "signal coefficients must be finite");
    }
    offset_ += static_cast<int>(first);
    coeffs_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(first),
                   coeffs.begin() + static_cast<std::ptrdiff_t>(end));
}

Signal Signal::impulse(int at, cplx value) { return Signal(at, {value}); }

cplx Signal::operator[](int n) const noexcept {
    const int j = n - offset_;
    if (j < 0 || j >= length()) return {};
    return coeffs_[static_cast<std::size_t>(j)];
}

double Signal::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double Signal::energy() const noexcept {
    double e = 0.0;
    for (const auto& c : coeffs_) e += std::norm(c);
    return e;
}

Signal trimmed(const Signal& x, double rel_tol) {
    if (x.is_zero()) return x;
    const double cut = rel_tol * x.max_abs();
    auto c = x.coeffs();
    std::size_t first = 0, end = c.size();
    while (first < end && std::abs(c[first]) <= cut) ++first;
    while (end > first && std::abs(c[end - 1]) <= cut) --end;
    return Signal(x.offset() + static_cast<int>(first),
                  std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(first),
                                    c.begin() + static_cast<std::ptrdiff_t>(end)));
}

// ---------------------------------------------------------------------------

TrigPoly::TrigPoly(int degree, std::vector<cplx> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0 || coeffs_.size() != static_cast<std::size_t>(2 * degree + 1))
        fail(ErrorKind::InvalidArgument, "trig polynomial needs 2*degree+1 coefficients");
}

TrigPoly TrigPoly::from_sequence(const Signal& a) {
    if (a.is_zero()) return {};
    const int d = std::max(-a.offset(), a.last());
    std::vector<cplx> c(static_cast<std::size_t>(2 * d + 1));
    for (int n = a.offset(); n <= a.last(); ++n) c[static_cast<std::size_t>(n + d)] = a[n];
    return TrigPoly(d, std::move(c));
}

cplx TrigPoly::coeff(int n) const noexcept {
    if (n < -degree_ || n > degree_) return {};
    return coeffs_[static_cast<std::size_t>(n + degree_)];
}

cplx TrigPoly::eval(double w) const noexcept {
    // Horner in z = e^{-iw}, then undo the z^{degree} lift.
    const cplx z = std::polar(1.0, -w);
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc * std::polar(1.0, w * degree_);
}

double TrigPoly::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool TrigPoly::is_hermitian(double rel_tol) const noexcept {
    const double cut = rel_tol * std::max(max_abs(), 1e-300);
    for (int n = 0; n <= degree_; ++n) {
        if (std::abs(coeff(n) - std::conj(coeff(-n))) > cut) return false;
    }
    return true;
}

TrigPoly TrigPoly::hermitian_part() const {
    std::vector<cplx> c(coeffs_.size());
    for (int n = -degree_; n <= degree_; ++n)
        c[static_cast<std::size_t>(n + degree_)] = 0.5 * (coeff(n) + std::conj(coeff(-n)));
    return TrigPoly(degree_, std::move(c));
}

TrigPoly TrigPoly::trimmed(double rel_tol) const {
    const double cut = rel_tol * max_abs();
    int d = degree_;
    while (d > 0 && std::abs(coeff(d)) <= cut && std::abs(coeff(-d)) <= cut) --d;
    std::vector<cplx> c(static_cast<std::size_t>(2 * d + 1));
    for (int n = -d; n <= d; ++n) c[static_cast<std::size_t>(n + d)] = coeff(n);
    return TrigPoly(d, std::move(c));
}

TrigPoly TrigPoly::padded(int degree) const {
    if (degree <= degree_) return *this;
    std::vector<cplx> c(static_cast<std::size_t>(2 * degree + 1));
    for (int n = -degree_; n <= degree_; ++n) c[static_cast<std::size_t>(n + degree)] = coeff(n);
    return TrigPoly(degree, std::move(c));
}

Signal TrigPoly::as_sequence() const { return Signal(-degree_, coeffs_); }

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    *this = padded(o.degree_);
    for (int n = -o.degree_; n <= o.degree_; ++n)
        coeffs_[static_cast<std::size_t>(n + degree_)] += o.coeff(n);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    *this = padded(o.degree_);
    for (int n = -o.degree_; n <= o.degree_; ++n)
        coeffs_[static_cast<std::size_t>(n + degree_)] -= o.coeff(n);
    return *this;
}

TrigPoly& TrigPoly::operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    const int d = a.degree_ + b.degree_;
    std::vector<cplx> c(static_cast<std::size_t>(2 * d + 1));
    for (int i = -a.degree_; i <= a.degree_; ++i) {
        const cplx ai = a.coeff(i);
        if (ai == cplx{}) continue;
        for (int j = -b.degree_; j <= b.degree_; ++j)
            c[static_cast<std::size_t>(i + j + d)] += ai * b.coeff(j);
    }
    return TrigPoly(d, std::move(c));
}

double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) {
    const int d = std::max(a.degree(), b.degree());
    double m = 0.0;
    for (int n = -d; n <= d; ++n) m = std::max(m, std::abs(a.coeff(n) - b.coeff(n)));
    return m;
}

// ---------------------------------------------------------------------------

cplx dtft_eval(const Signal& x, double w) {
    if (x.is_zero()) return {};
    const cplx z = std::polar(1.0, -w);
    cplx acc{};
    auto c = x.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc * std::polar(1.0, -w * x.offset());
}

Signal autocorrelation(const Signal& x) {
    if (x.is_zero()) fail(ErrorKind::InvalidArgument, "empty signal");
    const int n_len = x.length();
    auto c = x.coeffs();
    std::vector<cplx> a(static_cast<std::size_t>(2 * n_len - 1));
    for (int lag = -(n_len - 1); lag <= n_len - 1; ++lag) {
        cplx s{};
        for (int k = std::max(0, -lag); k < std::min(n_len, n_len - lag); ++k)
            s += std::conj(c[static_cast<std::size_t>(k)]) * c[static_cast<std::size_t>(k + lag)];
        a[static_cast<std::size_t>(lag + n_len - 1)] = s;
    }
    // a[0] is real by construction; drop the round-off imaginary part.
    a[static_cast<std::size_t>(n_len - 1)] = a[static_cast<std::size_t>(n_len - 1)].real();
    return Signal(-(n_len - 1), std::move(a));
}

TrigPoly intensity_function(const Signal& x) {
    const Signal a = autocorrelation(x);
    const int d = x.length() - 1;
    std::vector<cplx> c(static_cast<std::size_t>(2 * d + 1));
    for (int n = -d; n <= d; ++n) c[static_cast<std::size_t>(n + d)] = a[n];
    return TrigPoly(d, std::move(c));
}

Signal cross_correlation(const Signal& h, const Signal& x) {
    if (h.is_zero() || x.is_zero()) return {};
    const int lo = x.offset() - h.last();
    const int hi = x.last() - h.offset();
    std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
    for (int k = h.offset(); k <= h.last(); ++k) {
        const cplx hk = std::conj(h[k]);
        for (int j = x.offset(); j <= x.last(); ++j)
            c[static_cast<std::size_t>(j - k - lo)] += hk * x[j];
    }
    return Signal(lo, std::move(c));
}

Signal rotate(const Signal& x, double alpha) { return scale(x, std::polar(1.0, alpha)); }

Signal shift(const Signal& x, int m) {
    if (x.is_zero()) return x;
    return Signal(x.offset() + m, {x.coeffs().begin(), x.coeffs().end()});
}

Signal conj_reflect(const Signal& x) {
    if (x.is_zero()) return x;
    std::vector<cplx> c(x.coeffs().rbegin(), x.coeffs().rend());
    for (auto& v : c) v = std::conj(v);
    return Signal(-x.last(), std::move(c));
}

Signal modulate(const Signal& x, double mu) {
    std::vector<cplx> c(x.coeffs().begin(), x.coeffs().end());
    for (int j = 0; j < x.length(); ++j)
        c[static_cast<std::size_t>(j)] *= std::polar(1.0, mu * (x.offset() + j));
    return Signal(x.offset(), std::move(c));
}

Signal scale(const Signal& x, cplx s) {
    std::vector<cplx> c(x.coeffs().begin(), x.coeffs().end());
    for (auto& v : c) v *= s;
    return Signal(x.offset(), std::move(c));
}

namespace {

template <typename Op>
Signal combine(const Signal& a, const Signal& b, Op op) {
    if (a.is_zero() && b.is_zero()) return {};
    const int lo = a.is_zero() ? b.offset() : b.is_zero() ? a.offset() : std::min(a.offset(), b.offset());
    const int hi = a.is_zero() ? b.last() : b.is_zero() ? a.last() : std::max(a.last(), b.last());
    std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
    for (int n = lo; n <= hi; ++n) c[static_cast<std::size_t>(n - lo)] = op(a[n], b[n]);
    return Signal(lo, std::move(c));
}

// Matches y against e^{i alpha} shift(x, m) with m fixed by the offsets.
std::optional<TrivialWitness> match_rotation_shift(const Signal& x, const Signal& y,
                                                   double rel_tol, bool reflected) {
    if (x.length() != y.length()) return std::nullopt;
    auto xc = x.coeffs();
    auto yc = y.coeffs();
    std::size_t big = 0;
    for (std::size_t j = 1; j < xc.size(); ++j)
        if (std::abs(xc[j]) > std::abs(xc[big])) big = j;
    const double alpha = std::arg(yc[big] / xc[big]);
    const cplx rot = std::polar(1.0, alpha);
    const double cut = rel_tol * y.max_abs();
    for (std::size_t j = 0; j < xc.size(); ++j)
        if (std::abs(yc[j] - rot * xc[j]) > cut) return std::nullopt;
    return TrivialWitness{alpha, y.offset() - x.offset(), reflected};
}

}  // namespace

Signal operator+(const Signal& a, const Signal& b) {
    return combine(a, b, [](cplx u, cplx v) { return u + v; });
}

Signal operator-(const Signal& a, const Signal& b) {
    return combine(a, b, [](cplx u, cplx v) { return u - v; });
}

std::optional<TrivialWitness> trivially_equivalent(const Signal& x, const Signal& y,
                                                   double rel_tol) {
    if (x.is_zero() || y.is_zero()) {
        if (x.is_zero() && y.is_zero()) return TrivialWitness{};
        return std::nullopt;
    }
    if (auto w = match_rotation_shift(x, y, rel_tol, false)) return w;
    return match_rotation_shift(conj_reflect(x), y, rel_tol, true);
}

Signal apply(const TrivialWitness& w, const Signal& x) {
    return rotate(shift(w.reflected ? conj_reflect(x) : x, w.shift), w.rotation);
}

std::optional<double> rotation_equivalent(const Signal& x, const Signal& y, double rel_tol) {
    if (x.is_zero() || y.is_zero()) return std::nullopt;
    if (x.offset() != y.offset()) return std::nullopt;
    if (auto w = match_rotation_shift(x, y, rel_tol, false)) return w->rotation;
    return std::nullopt;
}

Signal canonical_representative(const Signal& x) {
    if (x.is_zero()) return x;
    const cplx first = x.coeffs().front();
    return shift(scale(x, std::conj(first) / std::abs(first)), -x.offset());
}

RotationFit fit_rotation(const Signal& x, const Signal& y) {
    RotationFit fit;
    if (x.is_zero() || y.is_zero()) {
        fit.max_rel_err = (x.is_zero() && y.is_zero()) ? 0.0 : 1.0;
        return fit;
    }
    const int lo = std::min(x.offset(), y.offset());
    const int hi = std::max(x.last(), y.last());
    cplx inner{};
    for (int n = lo; n <= hi; ++n) inner += std::conj(x[n]) * y[n];
    fit.rotation = std::arg(inner);
    const cplx rot = std::polar(1.0, fit.rotation);
    double err = 0.0;
    for (int n = lo; n <= hi; ++n) err = std::max(err, std::abs(y[n] - rot * x[n]));
    fit.max_rel_err = err / x.max_abs();
    return fit;
}

}  // namespace interfero
