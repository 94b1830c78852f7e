#include "interfero/trigpoly_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "interfero/error.hpp"

namespace interfero {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_distinct_nodes(std::span<const Sample> samples) {
    std::vector<double> w;
    w.reserve(samples.size());
    for (const auto& s : samples) {
        if (!std::isfinite(s.w)) fail(ErrorKind::InvalidArgument, "non-finite sample node");
        double r = std::fmod(s.w, kTwoPi);
        if (r < 0) r += kTwoPi;
        w.push_back(r);
    }
    std::sort(w.begin(), w.end());
    constexpr double gap = 1e-12;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] - w[i - 1] <= gap) fail(ErrorKind::InvalidArgument, "singular interpolation");
    if (w.size() > 1 && w.front() + kTwoPi - w.back() <= gap)
        fail(ErrorKind::InvalidArgument, "singular interpolation");
}

}  // namespace

TrigPoly fit_trig_poly(std::span<const Sample> samples, int degree, double residual_tol) {
    if (degree < 0) fail(ErrorKind::InvalidArgument, "negative degree");
    const auto m = static_cast<Eigen::Index>(samples.size());
    const Eigen::Index unknowns = 2 * degree + 1;
    if (m < unknowns)
        fail(ErrorKind::InvalidArgument, "fit needs at least 2*degree+1 samples");
    require_distinct_nodes(samples);

    const bool real_values = std::all_of(samples.begin(), samples.end(),
                                         [](const Sample& s) { return s.value.imag() == 0.0; });
    double scale = 0.0;
    for (const auto& s : samples) scale = std::max(scale, std::abs(s.value));

    std::vector<cplx> coeffs(static_cast<std::size_t>(unknowns));
    double rms = 0.0;
    if (real_values) {
        // f(w) = a0 + sum_n 2 (u_n cos(nw) + v_n sin(nw)),  a[n] = u_n + i v_n.
        Eigen::MatrixXd a(m, unknowns);
        Eigen::VectorXd b(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            const double w = samples[static_cast<std::size_t>(k)].w;
            a(k, 0) = 1.0;
            for (int n = 1; n <= degree; ++n) {
                a(k, 2 * n - 1) = 2.0 * std::cos(n * w);
                a(k, 2 * n) = 2.0 * std::sin(n * w);
            }
            b(k) = samples[static_cast<std::size_t>(k)].value.real();
        }
        const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
        rms = (a * sol - b).norm() / std::sqrt(static_cast<double>(m));
        coeffs[static_cast<std::size_t>(degree)] = sol(0);
        for (int n = 1; n <= degree; ++n) {
            const cplx an(sol(2 * n - 1), sol(2 * n));
            coeffs[static_cast<std::size_t>(degree + n)] = an;
            coeffs[static_cast<std::size_t>(degree - n)] = std::conj(an);
        }
    } else {
        Eigen::MatrixXcd a(m, unknowns);
        Eigen::VectorXcd b(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            const double w = samples[static_cast<std::size_t>(k)].w;
            for (int n = -degree; n <= degree; ++n) a(k, n + degree) = std::polar(1.0, -w * n);
            b(k) = samples[static_cast<std::size_t>(k)].value;
        }
        const Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(b);
        rms = (a * sol - b).norm() / std::sqrt(static_cast<double>(m));
        for (Eigen::Index j = 0; j < unknowns; ++j) coeffs[static_cast<std::size_t>(j)] = sol(j);
    }
    if (m > unknowns && scale > 0.0 && rms > residual_tol * scale)
        fail(ErrorKind::Numerical, "degree too small");
    return TrigPoly(degree, std::move(coeffs));
}

TrigPoly fit_trig_poly(std::span<const double> grid, std::span<const double> values, int degree,
                       double residual_tol) {
    if (grid.size() != values.size())
        fail(ErrorKind::InvalidArgument, "grid and values differ in length");
    std::vector<Sample> s(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) s[k] = {grid[k], values[k]};
    return fit_trig_poly(s, degree, residual_tol);
}

int support_length_of(const TrigPoly& intensity, double tol) {
    const double cut = tol * intensity.max_abs();
    if (intensity.max_abs() == 0.0) fail(ErrorKind::Malformed, "zero intensity");
    int top = 0;
    for (int n = intensity.degree(); n > 0; --n) {
        if (std::abs(intensity.coeff(n)) > cut || std::abs(intensity.coeff(-n)) > cut) {
            top = n;
            break;
        }
    }
    return top + 1;
}

int estimate_support_length(std::span<const Sample> squared_intensity, int degree_bound,
                            double tol) {
    return support_length_of(fit_trig_poly(squared_intensity, degree_bound), tol);
}

// ---------------------------------------------------------------------------

AlgebraicPoly::AlgebraicPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == cplx{}) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(cplx{});
}

AlgebraicPoly AlgebraicPoly::from_roots(std::span<const cplx> roots, cplx lead) {
    std::vector<cplx> c{lead};
    for (const cplx& r : roots) {
        c.push_back(cplx{});
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return AlgebraicPoly(std::move(c));
}

cplx AlgebraicPoly::eval(cplx z) const noexcept {
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::pair<cplx, cplx> AlgebraicPoly::eval_with_derivative(cplx z) const noexcept {
    cplx p{}, dp{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

double AlgebraicPoly::magnitude_bound(cplx z) const noexcept {
    const double r = std::abs(z);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

}  // namespace interfero

// ---------------------------------------------------------------------------

namespace interfero {

namespace {

Eigen::VectorXcd self_convolve(const Eigen::VectorXcd& t) {
    const Eigen::Index n = t.size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n - 1);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i + j) += t(i) * t(j);
    return out;
}

void hermitian_project(Eigen::VectorXcd& t) {
    const Eigen::Index n = t.size();
    for (Eigen::Index i = 0; i <= (n - 1) / 2; ++i) {
        const cplx v = 0.5 * (t(i) + std::conj(t(n - 1 - i)));
        t(i) = v;
        t(n - 1 - i) = std::conj(v);
    }
}

}  // namespace

TrigSqrt real_trig_sqrt(const TrigPoly& q_in, double trim_tol) {
    const TrigPoly q = q_in.hermitian_part().trimmed(trim_tol);
    const double qmax = q.max_abs();
    if (qmax == 0.0) return {TrigPoly{}, 0.0};
    const int w = (q.degree() + 1) / 2;
    const TrigPoly qp = q.padded(2 * w);

    Eigen::VectorXcd target(4 * w + 1);
    for (int n = -2 * w; n <= 2 * w; ++n) target(n + 2 * w) = qp.coeff(n);

    Eigen::VectorXcd t(2 * w + 1);
    if (w == 0) {
        t(0) = std::sqrt(std::max(0.0, qp.coeff(0).real()));
    } else {
        // Roots of the degree-4w associated polynomial come in coincident
        // pairs; one of each pair belongs to T.
        const AlgebraicPoly pq(std::vector<cplx>(qp.coeffs().begin(), qp.coeffs().end()));
        std::vector<cplx> roots = poly_roots(pq);
        std::vector<cplx> half;
        while (!roots.empty()) {
            const cplx r = roots.back();
            roots.pop_back();
            auto it = std::min_element(roots.begin(), roots.end(), [&](cplx u, cplx v) {
                return std::abs(u - r) < std::abs(v - r);
            });
            half.push_back(0.5 * (r + *it));
            roots.erase(it);
        }
        const AlgebraicPoly pt = AlgebraicPoly::from_roots(half, std::sqrt(qp.coeff(2 * w)));
        for (int k = 0; k <= 2 * w; ++k) t(k) = k <= pt.degree() ? pt.coeffs()[static_cast<std::size_t>(k)] : cplx{};
        hermitian_project(t);
    }

    // Gauss-Newton on t * t = q: J d = 2 t * d.
    auto residual = [&](const Eigen::VectorXcd& v) { return (self_convolve(v) - target).cwiseAbs().maxCoeff(); };
    double best = residual(t);
    for (int it = 0; it < 40 && best > 1e-15 * qmax; ++it) {
        const Eigen::Index n = t.size();
        Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(2 * n - 1, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) jac(i + j, j) += 2.0 * t(i);
        const Eigen::VectorXcd r = self_convolve(t) - target;
        Eigen::VectorXcd next = t - jac.colPivHouseholderQr().solve(r);
        hermitian_project(next);
        const double res = residual(next);
        if (!(res < best)) break;
        t = next;
        best = res;
    }

    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * w + 1));
    for (int k = 0; k <= 2 * w; ++k) coeffs[static_cast<std::size_t>(k)] = t(k);
    return {TrigPoly(w, std::move(coeffs)), best / qmax};
}

}  // namespace interfero
