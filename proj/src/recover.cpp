#include "interfero/recover.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "interfero/ambiguity.hpp"
#include "interfero/prony.hpp"
#include "interfero/trigpoly_fit.hpp"

namespace interfero {

namespace {

constexpr double kPi = std::numbers::pi;

TrigPoly fit_squared(const std::vector<double>& grid, const std::vector<double>& values, int degree,
                     double residual_tol) {
    std::vector<double> sq(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) sq[k] = values[k] * values[k];
    return fit_trig_poly(grid, sq, degree, residual_tol);
}

// Coefficients of a trig polynomial truncated to degree `d`.
TrigPoly truncate(const TrigPoly& p, int d) {
    d = std::min(d, p.degree());
    std::vector<cplx> c(static_cast<std::size_t>(2 * d + 1));
    for (int n = -d; n <= d; ++n) c[static_cast<std::size_t>(n + d)] = p.coeff(n);
    return TrigPoly(d, std::move(c));
}

}  // namespace

// ---------------------------------------------------------------------------

SelfInterferenceRecovery recover_self_interference(const MeasurementSet& m, Extraction mode,
                                                   const Tolerances& tol) {
    const ChannelModel model(m, mode, tol);
    const int n = model.support_length();
    const double mu = model.mu();
    if (!check_mu(mu, n, tol.mu_admissibility))
        fail(ErrorKind::Admissibility,
             "modulation mu is a rational multiple 2 pi p/q of 2 pi with q < N = " + std::to_string(n));

    // Start node maximizing the smallest magnitude along w0 + k mu.
    const int path = 2 * n;
    const int scan = 64 * n;
    double best_w = 0.0;
    double best_min = -1.0;
    for (int c = 0; c < scan; ++c) {
        const double w = -kPi + 2.0 * kPi * c / scan;
        double pm = std::numeric_limits<double>::infinity();
        for (int k = 0; k < path && pm > best_min; ++k) pm = std::min(pm, model.magnitude(w + k * mu));
        if (pm > best_min) {
            best_min = pm;
            best_w = w;
        }
    }
    if (best_min <= tol.path_min * model.max_base())
        fail(ErrorKind::Numerical, "degenerate sampling path");

    // phi(w0) = 0; e^{i phi_k} = e^{i phi_{k-1}} conj(e^{i(phi_{k-1} - phi_k)}).
    std::vector<cplx> samples(static_cast<std::size_t>(path));
    cplx phase = 1.0;
    samples[0] = model.magnitude(best_w);
    for (int k = 1; k < path; ++k) {
        const double w = best_w + k * mu;
        phase *= std::conj(model.relative_phase(w));
        phase /= std::abs(phase);
        samples[static_cast<std::size_t>(k)] = model.magnitude(w) * phase;
    }

    const ExponentialSum es = prony_recover(samples, n, tol);
    const Signal located = frequencies_to_support(es, mu, n, tol);

    std::vector<cplx> coeffs(located.coeffs().begin(), located.coeffs().end());
    for (int j = 0; j < located.length(); ++j)
        coeffs[static_cast<std::size_t>(j)] *= std::polar(1.0, best_w * (located.offset() + j));

    SelfInterferenceRecovery out;
    out.signal = Signal(located.offset(), std::move(coeffs));
    out.omega0 = best_w;
    out.support_length = n;
    out.values_consumed = model.values_consumed();
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Least-squares deconvolution of c = h (cross) x for x on {0..window-1}.
// Returns the candidate and its relative residual.
std::pair<Signal, double> deconvolve(const TrigPoly& g, const Signal& h, int window) {
    const int lo_c = -h.last();
    const int hi_c = window - 1 - h.offset();
    const int reach = std::max({g.degree(), std::abs(lo_c), std::abs(hi_c)});
    const Eigen::Index rows = 2 * reach + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, window);
    Eigen::VectorXcd b(rows);
    for (int d = -reach; d <= reach; ++d) {
        b(d + reach) = g.coeff(d);
        for (int j = 0; j < window; ++j) {
            // c[d] = sum_k conj(h[k]) x[k + d], x index j = k + d.
            a(d + reach, j) = std::conj(h[j - d]);
        }
    }
    const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(b);
    const double bn = b.norm();
    const double rel = bn > 0.0 ? (a * x - b).norm() / bn : (a * x - b).norm();
    std::vector<cplx> c(static_cast<std::size_t>(window));
    for (int j = 0; j < window; ++j) c[static_cast<std::size_t>(j)] = x(j);
    return {Signal(0, std::move(c)), rel};
}

}  // namespace

std::vector<Signal> recover_known_reference(const MeasurementSet& m, int window,
                                            const Tolerances& tol) {
    validate(m);
    if (!m.reference) fail(ErrorKind::InvalidArgument, "measurement set has no reference block");
    if (!m.reference->signal) fail(ErrorKind::InvalidArgument, "reference signal is not known");
    const Signal& h = *m.reference->signal;
    if (h.is_zero()) fail(ErrorKind::Admissibility, "reference spectrum too sparse");
    if (window < 1) fail(ErrorKind::InvalidArgument, "window must be positive");

    const int db = m.support_bound;
    const TrigPoly ax = fit_squared(m.grid, m.base, db, tol.fit_residual);
    const TrigPoly as = fit_squared(m.grid, m.reference->interference, db, tol.fit_residual);
    const TrigPoly ah = intensity_function(h);
    const int nx = support_length_of(ax, tol.support);
    if (nx > window) fail(ErrorKind::Admissibility, "window too small");

    // G = F x conj(F h):  Re G = (|F(x+h)|^2 - |F x|^2 - |F h|^2) / 2,
    // (Im G)^2 = |F x|^2 |F h|^2 - (Re G)^2.
    const TrigPoly re_g = ((as - ax - ah) * cplx(0.5)).hermitian_part();
    const TrigPoly q = ax * ah - re_g * re_g;
    const TrigPoly im_g = real_trig_sqrt(q).root;

    const double ax_scale = ax.max_abs();
    std::vector<Signal> out;
    for (const double sign : {1.0, -1.0}) {
        const TrigPoly g = re_g + im_g * cplx(0.0, sign);
        auto [cand, rel] = deconvolve(g, h, window);
        if (rel > tol.equivalence) continue;
        if (cand.is_zero()) continue;
        if (max_coeff_diff(intensity_function(cand), ax) > tol.equivalence * ax_scale) continue;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Signal& s) {
            return (s - cand).max_abs() <= tol.equivalence * cand.max_abs();
        });
        if (!dup) out.push_back(trimmed(cand, 1e-13));
    }
    if (out.empty()) fail(ErrorKind::Numerical, "no candidate with finite support in the window");
    return out;
}

// ---------------------------------------------------------------------------

std::optional<TrivialWitness> joint_witness(const SignalPair& p, const SignalPair& q,
                                            double rel_tol) {
    for (const bool reflected : {false, true}) {
        const Signal ph = reflected ? conj_reflect(p.h) : p.h;
        if (ph.length() != q.h.length() || ph.is_zero()) continue;
        const int m = q.h.offset() - ph.offset();
        auto hc = ph.coeffs();
        std::size_t big = 0;
        for (std::size_t j = 1; j < hc.size(); ++j)
            if (std::abs(hc[j]) > std::abs(hc[big])) big = j;
        const double alpha = std::arg(q.h.coeffs()[big] / hc[big]);
        const TrivialWitness w{alpha, m, reflected};
        const Signal th = apply(w, p.h);
        const Signal tx = apply(w, p.x);
        const double hs = std::max(q.h.max_abs(), 1e-300);
        const double xs = std::max(q.x.max_abs(), 1e-300);
        if ((th - q.h).max_abs() <= rel_tol * hs && (tx - q.x).max_abs() <= rel_tol * xs) return w;
    }
    return std::nullopt;
}

bool jointly_equivalent(const SignalPair& p, const SignalPair& q, double rel_tol) {
    return joint_witness(p, q, rel_tol).has_value();
}

double zero_set_distance(const TrigPoly& a_x, const TrigPoly& a_h) {
    if (a_x.degree() == 0 || a_h.degree() == 0) return std::numeric_limits<double>::infinity();
    const auto rx = poly_roots(associated_polynomial(a_x));
    const auto rh = poly_roots(associated_polynomial(a_h));
    double d = std::numeric_limits<double>::infinity();
    for (const cplx& u : rx)
        for (const cplx& v : rh) d = std::min(d, std::abs(u - v));
    return d;
}

std::vector<SignalPair> resolve_unknown_reference(const std::vector<double>& grid,
                                                  const std::vector<double>& base_x,
                                                  const std::vector<double>& base_h,
                                                  const std::vector<double>& interference,
                                                  int degree_bound, int support_x, int support_h,
                                                  const Tolerances& tol) {
    TrigPoly ax = fit_squared(grid, base_x, degree_bound, tol.fit_residual).hermitian_part();
    TrigPoly ah = fit_squared(grid, base_h, degree_bound, tol.fit_residual).hermitian_part();
    const TrigPoly as = fit_squared(grid, interference, degree_bound, tol.fit_residual).hermitian_part();
    if (support_x <= 0) support_x = support_length_of(ax, tol.support);
    if (support_h <= 0) support_h = support_length_of(ah, tol.support);
    ax = truncate(ax, support_x - 1);
    ah = truncate(ah, support_h - 1);

    if (zero_set_distance(ax, ah) <= tol.zero_disjoint)
        fail(ErrorKind::Admissibility, "hypothesis violated: shared zeros");

    const AmbiguityCatalog cat_x = catalog_from_intensity(ax, tol);
    const std::vector<Signal> xs = all_flip_candidates(cat_x, tol);
    const std::vector<Signal> hs = enumerate_ambiguities(ah, tol).representatives;

    const TrigPoly d = (as - ax - ah).hermitian_part();
    const double d_scale = d.max_abs();
    const int reach = d.trimmed(tol.support).degree();
    const double as_scale = as.max_abs();

    std::vector<SignalPair> survivors;
    for (const Signal& hh : hs) {
        for (const Signal& xx : xs) {
            const Signal c0 = cross_correlation(hh, xx);
            for (int m = -reach - support_x; m <= reach + support_h; ++m) {
                // The shifted cross-correlation must reach degree `reach`.
                const int lo = c0.offset() + m;
                const int hi = c0.last() + m;
                if (std::max(std::abs(lo), std::abs(hi)) < reach) continue;
                if (d_scale == 0.0) break;

                // d[n] = cos b (c[n] + conj c[-n]) + sin b * i (c[n] - conj c[-n])
                const int r = std::max({reach, std::abs(lo), std::abs(hi)});
                Eigen::MatrixXd a(2 * (2 * r + 1), 2);
                Eigen::VectorXd rhs(2 * (2 * r + 1));
                for (int n = -r; n <= r; ++n) {
                    const cplx cn = c0[n - m];
                    const cplx cm = std::conj(c0[-n - m]);
                    const cplx u = cn + cm;
                    const cplx v = cplx(0.0, 1.0) * (cn - cm);
                    const Eigen::Index row = 2 * (n + r);
                    a(row, 0) = u.real();
                    a(row, 1) = v.real();
                    a(row + 1, 0) = u.imag();
                    a(row + 1, 1) = v.imag();
                    rhs(row) = d.coeff(n).real();
                    rhs(row + 1) = d.coeff(n).imag();
                }
                const Eigen::Vector2d cs = a.colPivHouseholderQr().solve(rhs);
                if (!(cs.norm() > 0.0)) continue;
                const double beta = std::atan2(cs(1), cs(0));
                const Signal xr = rotate(shift(xx, m), beta);
                const Signal sum = xr + hh;
                if (sum.is_zero()) continue;
                if (max_coeff_diff(intensity_function(sum), as) > tol.equivalence * as_scale) continue;
                SignalPair cand{xr, hh};
                const bool dup = std::any_of(survivors.begin(), survivors.end(), [&](const SignalPair& s) {
                    return jointly_equivalent(s, cand, tol.equivalence);
                });
                if (!dup) survivors.push_back(std::move(cand));
            }
        }
    }
    if (survivors.empty()) fail(ErrorKind::Numerical, "inconsistent measurements");
    return survivors;
}

std::vector<SignalPair> resolve_unknown_reference(const MeasurementSet& m, const Tolerances& tol) {
    validate(m);
    if (!m.reference) fail(ErrorKind::InvalidArgument, "measurement set has no reference block");
    return resolve_unknown_reference(m.grid, m.base, m.reference->base_h, m.reference->interference,
                                     m.support_bound, 0, 0, tol);
}

// ---------------------------------------------------------------------------

RoundTripReport verify_round_trip(const Signal& x, const RoundTripConfig& cfg) {
    RoundTripReport rep;
    rep.mode = cfg.sim.mode;
    const Tolerances tol = cfg.tol.for_noise(cfg.sim.noise);
    try {
        const MeasurementSet m = simulate(x, cfg.sim, tol.rotation_pair);
        switch (cfg.sim.mode) {
        case Mode::Polarization:
        case Mode::TwoRotation: {
            const auto rec = recover_self_interference(
                m, cfg.sim.mode == Mode::Polarization ? Extraction::Polarization : Extraction::TwoRotation, tol);
            const RotationFit fit = fit_rotation(x, rec.signal);
            rep.rotation = fit.rotation;
            rep.max_err = fit.max_rel_err;
            rep.n0 = rec.signal.offset();
            rep.values_consumed = rec.values_consumed;
            rep.success = rec.signal.offset() == x.offset() && rec.signal.length() == x.length() &&
                          fit.max_rel_err <= tol.equivalence;
            break;
        }
        case Mode::KnownReference: {
            const int window = cfg.window > 0 ? cfg.window : std::max(x.last() + 1, 1);
            const auto cands = recover_known_reference(m, window, tol);
            rep.max_err = std::numeric_limits<double>::infinity();
            for (const Signal& c : cands) {
                const RotationFit fit = fit_rotation(x, c);
                if (fit.max_rel_err < rep.max_err) {
                    rep.max_err = fit.max_rel_err;
                    rep.rotation = fit.rotation;
                    rep.n0 = c.offset();
                }
            }
            rep.values_consumed = m.value_count();
            rep.success = rep.max_err <= tol.equivalence;
            break;
        }
        case Mode::UnknownReference: {
            const auto pairs = resolve_unknown_reference(m, tol);
            const SignalPair truth{x, *cfg.sim.reference};
            rep.max_err = std::numeric_limits<double>::infinity();
            for (const SignalPair& p : pairs) {
                // Align the candidate to the truth through the reference.
                if (auto w = joint_witness(p, truth, 1.0)) {
                    const Signal aligned = apply(*w, p.x);
                    const double err = (aligned - x).max_abs() / x.max_abs();
                    if (err < rep.max_err) {
                        rep.max_err = err;
                        rep.rotation = w->rotation;
                        rep.n0 = aligned.offset();
                    }
                }
            }
            rep.values_consumed = m.value_count();
            rep.success = pairs.size() == 1 && jointly_equivalent(pairs.front(), truth, tol.equivalence);
            break;
        }
        }
    } catch (const Error& e) {
        rep.success = false;
        rep.error_kind = e.kind();
        rep.message = e.what();
    }
    return rep;
}

Signal random_signal(int support_length, std::mt19937_64& rng, int offset_range) {
    if (support_length < 1) fail(ErrorKind::InvalidArgument, "support length must be positive");
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(support_length));
    for (std::size_t j = 0; j < c.size(); ++j) {
        do {
            c[j] = cplx(g(rng), g(rng)) / std::sqrt(2.0);
        } while ((j == 0 || j + 1 == c.size()) && std::abs(c[j]) < 0.1);
    }
    int offset = 0;
    if (offset_range > 0) offset = std::uniform_int_distribution<int>(-offset_range, offset_range)(rng);
    return Signal(offset, std::move(c));
}

}  // namespace interfero
