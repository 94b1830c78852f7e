#include "interfero/prony.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "interfero/error.hpp"
#include "interfero/trigpoly_fit.hpp"

namespace interfero {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x) {
    x = std::remainder(x, kTwoPi);
    return x;
}

double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

cplx ExponentialSum::eval(double k) const {
    cplx acc{};
    for (const auto& t : terms) acc += t.coefficient * std::polar(1.0, -t.frequency * k);
    return acc;
}

ExponentialSum prony_recover(std::span<const cplx> samples, int n_terms, const Tolerances& tol) {
    if (n_terms < 1 || samples.size() != static_cast<std::size_t>(2 * n_terms))
        fail(ErrorKind::InvalidArgument, "Prony needs exactly 2N samples");
    const double scale = max_abs(samples);
    ExponentialSum out;
    if (scale == 0.0) return out;

    const Eigen::Index n = n_terms;
    const Eigen::Index count = 2 * n;
    auto f = [&](Eigen::Index k) { return samples[static_cast<std::size_t>(k)]; };

    // Numerical rank of the N x (N+1) Hankel matrix gives the term count.
    Eigen::MatrixXcd hankel(n, n + 1);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c <= n; ++c) hankel(r, c) = f(r + c);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hankel);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv(j) > tol.prony_rank * sv(0)) ++rank;
    rank = std::max<Eigen::Index>(rank, 1);

    // Linear prediction of order `rank`: f(k+r) + sum_j p_j f(k+j) = 0.
    const Eigen::Index rows = count - rank;
    Eigen::MatrixXcd lp(rows, rank);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index k = 0; k < rows; ++k) {
        for (Eigen::Index j = 0; j < rank; ++j) lp(k, j) = f(k + j);
        rhs(k) = -f(k + rank);
    }
    const Eigen::VectorXcd p = lp.completeOrthogonalDecomposition().solve(rhs);
    std::vector<cplx> poly(static_cast<std::size_t>(rank + 1));
    for (Eigen::Index j = 0; j < rank; ++j) poly[static_cast<std::size_t>(j)] = p(j);
    poly.back() = 1.0;
    std::vector<cplx> nodes = poly_roots(AlgebraicPoly(poly));
    for (auto& z : nodes) z = std::abs(z) > 0.0 ? z / std::abs(z) : cplx(1.0, 0.0);

    Eigen::MatrixXcd vander(count, static_cast<Eigen::Index>(nodes.size()));
    Eigen::VectorXcd fv(count);
    for (Eigen::Index k = 0; k < count; ++k) {
        fv(k) = f(k);
        for (std::size_t j = 0; j < nodes.size(); ++j)
            vander(k, static_cast<Eigen::Index>(j)) = std::pow(nodes[j], static_cast<double>(k));
    }
    const Eigen::VectorXcd coef = vander.colPivHouseholderQr().solve(fv);
    double cmax = 0.0;
    for (Eigen::Index j = 0; j < coef.size(); ++j) cmax = std::max(cmax, std::abs(coef(j)));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const cplx c = coef(static_cast<Eigen::Index>(j));
        if (std::abs(c) <= tol.prony_discard * cmax) continue;
        out.terms.push_back({-std::arg(nodes[j]), c});
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const auto& a, const auto& b) { return a.frequency < b.frequency; });

    double resid = 0.0;
    for (Eigen::Index k = 0; k < count; ++k)
        resid = std::max(resid, std::abs(out.eval(static_cast<double>(k)) - f(k)));
    if (resid > tol.prony_residual * scale)
        fail(ErrorKind::Numerical, "samples not an N-term exponential sum");
    return out;
}

bool check_mu(double mu, int support_length, double tol) {
    for (int q = 1; q < support_length; ++q) {
        const double t = q * mu / kTwoPi;
        if (std::abs(t - std::round(t)) <= tol) return false;
    }
    return true;
}

Signal frequencies_to_support(const ExponentialSum& es, double mu, int support_length,
                              const Tolerances& tol) {
    if (es.terms.empty()) return {};
    const int window = std::max(support_length, 1);
    const int bound = tol.max_offset + window;

    struct Candidate {
        int m;
        double residual;
    };
    std::vector<std::vector<Candidate>> cands(es.terms.size());
    const double amu = std::abs(mu);
    for (std::size_t j = 0; j < es.terms.size(); ++j) {
        const double nu = es.terms[j].frequency;
        if (amu < 1e-300) {
            if (std::abs(wrap(nu)) <= tol.lattice) cands[j].push_back({0, std::abs(wrap(nu))});
            continue;
        }
        const int lmax = static_cast<int>(std::ceil((amu * bound + std::numbers::pi) / kTwoPi)) + 1;
        std::map<int, double> found;
        for (int l = -lmax; l <= lmax; ++l) {
            const double mr = (nu + kTwoPi * l) / mu;
            if (std::abs(mr) > bound + 1) continue;
            const int m = static_cast<int>(std::lround(mr));
            if (std::abs(m) > bound) continue;
            const double r = std::abs(wrap(mu * m - nu));
            if (r <= tol.lattice) found.emplace(m, r);
        }
        for (auto [m, r] : found) cands[j].push_back({m, r});
        if (cands[j].empty()) fail(ErrorKind::Numerical, "frequency-lattice mismatch");
    }

    // Anchor on each candidate of the first term; every other term must have
    // exactly one candidate within the window around the anchor.
    struct Assignment {
        std::vector<int> m;
        double residual;
    };
    std::vector<Assignment> feasible;
    for (const Candidate& anchor : cands[0]) {
        Assignment a{{anchor.m}, anchor.residual};
        bool ok = true;
        for (std::size_t j = 1; j < cands.size() && ok; ++j) {
            int hits = 0;
            for (const Candidate& c : cands[j]) {
                if (std::abs(c.m - anchor.m) <= window - 1) {
                    if (++hits == 1) {
                        a.m.push_back(c.m);
                        a.residual += c.residual;
                    }
                }
            }
            ok = hits == 1;
        }
        if (!ok) continue;
        const auto [lo, hi] = std::minmax_element(a.m.begin(), a.m.end());
        if (*hi - *lo > window - 1) continue;
        std::vector<int> sorted = a.m;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        feasible.push_back(std::move(a));
    }
    if (feasible.size() != 1) {
        fail(ErrorKind::Numerical, feasible.empty() ? "frequency-lattice mismatch"
                                                    : "frequency-lattice ambiguity");
    }

    const auto& ms = feasible.front().m;
    const int n0 = *std::min_element(ms.begin(), ms.end());
    const int n1 = *std::max_element(ms.begin(), ms.end());
    std::vector<cplx> coeffs(static_cast<std::size_t>(n1 - n0 + 1));
    for (std::size_t j = 0; j < ms.size(); ++j)
        coeffs[static_cast<std::size_t>(ms[j] - n0)] = es.terms[j].coefficient;
    return Signal(n0, std::move(coeffs));
}

std::vector<cplx> solve_known_support(std::span<const cplx> samples, double mu,
                                      std::span<const int> support, const Tolerances& tol) {
    if (support.empty()) fail(ErrorKind::InvalidArgument, "empty support");
    if (samples.size() < support.size())
        fail(ErrorKind::InvalidArgument, "fewer samples than unknown coefficients");
    const auto [lo, hi] = std::minmax_element(support.begin(), support.end());
    if (!check_mu(mu, *hi - *lo + 1, tol.mu_admissibility))
        fail(ErrorKind::Admissibility, "modulation mu aliases support indices");

    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXcd v(rows, cols);
    Eigen::VectorXcd f(rows);
    for (Eigen::Index k = 0; k < rows; ++k) {
        f(k) = samples[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < cols; ++j)
            v(k, j) = std::polar(1.0, -mu * static_cast<double>(k) * support[static_cast<std::size_t>(j)]);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > tol.vandermonde_cond)
        fail(ErrorKind::Numerical, "Vandermonde near-singular");
    const Eigen::VectorXcd c = svd.solve(f);
    const double scale = max_abs(samples);
    const double resid = (v * c - f).cwiseAbs().maxCoeff();
    if (resid > tol.prony_residual * std::max(scale, 1e-300) && scale > 0.0)
        fail(ErrorKind::Numerical, "model mismatch");
    std::vector<cplx> out(static_cast<std::size_t>(cols));
    for (Eigen::Index j = 0; j < cols; ++j) out[static_cast<std::size_t>(j)] = c(j);
    return out;
}

}  // namespace interfero
