#include "interfero/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "interfero/error.hpp"

namespace interfero {

namespace {

constexpr int kHardCap = 22;

bool near(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

cplx mirror(cplx z) { return 1.0 / std::conj(z); }

struct PairGroup {
    ZeroPair pair;  // inside-first orientation
    int multiplicity = 1;
};

std::vector<PairGroup> group_pairs(const AmbiguityCatalog& cat, double rel) {
    std::vector<PairGroup> groups;
    for (ZeroPair p : cat.zero_pairs) {
        if (std::abs(p.first) > 1.0) std::swap(p.first, p.second);
        bool merged = false;
        for (auto& g : groups) {
            if (near(p.first, g.pair.first, rel)) {
                ++g.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) groups.push_back({p, 1});
    }
    return groups;
}

Signal candidate_from_counts(const AmbiguityCatalog& cat, const std::vector<PairGroup>& groups,
                             const std::vector<int>& flipped) {
    std::vector<cplx> roots(cat.unit_circle_zeros);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const int m = groups[g].multiplicity;
        for (int j = 0; j < m; ++j)
            roots.push_back(j < flipped[g] ? groups[g].pair.second : groups[g].pair.first);
    }
    const AlgebraicPoly q = AlgebraicPoly::from_roots(roots);
    std::vector<cplx> c(q.coeffs().begin(), q.coeffs().end());
    double norm = 0.0;
    for (const auto& v : c) norm += std::norm(v);
    const double s = cat.scale / std::sqrt(norm);
    for (auto& v : c) v *= s;
    return canonical_representative(Signal(0, std::move(c)));
}

// Mixed-radix walk over flip counts k_g in [0, m_g].
template <typename Visit>
void for_each_count_vector(const std::vector<PairGroup>& groups, Visit visit) {
    std::vector<int> k(groups.size(), 0);
    while (true) {
        visit(k);
        std::size_t g = 0;
        for (; g < groups.size(); ++g) {
            if (++k[g] <= groups[g].multiplicity) break;
            k[g] = 0;
        }
        if (g == groups.size()) return;
    }
}

}  // namespace

long long ambiguity_bound(int support_length) {
    if (support_length <= 2) return 1;
    return 1LL << (support_length - 2);
}

AlgebraicPoly associated_polynomial(const TrigPoly& a) {
    const int d = a.degree();
    if (d > 0 && std::abs(a.coeff(d)) <= 1e-13 * a.max_abs())
        fail(ErrorKind::InvalidArgument, "untrimmed intensity");
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    return AlgebraicPoly(std::move(c));
}

void require_intensity(const TrigPoly& a, double tol) {
    const double a0 = a.coeff(0).real();
    if (!(a0 > 0.0)) fail(ErrorKind::Malformed, "not an intensity");
    if (!a.is_hermitian(1e-10)) fail(ErrorKind::Malformed, "not an intensity");
    const int points = 32 * (2 * a.degree() + 1);
    for (int k = 0; k < points; ++k) {
        const double w = -std::numbers::pi + 2.0 * std::numbers::pi * k / points;
        if (a.eval_real(w) < -tol * a0) fail(ErrorKind::Malformed, "not an intensity");
    }
}

AmbiguityCatalog catalog_from_intensity(const TrigPoly& a_in, const Tolerances& tol) {
    require_intensity(a_in, tol.intensity_match);
    const TrigPoly a = a_in.hermitian_part();
    AmbiguityCatalog cat;
    cat.scale = std::sqrt(a.coeff(0).real());
    cat.support_length = a.degree() + 1;
    if (a.degree() == 0) return cat;

    const std::vector<cplx> roots = poly_roots(associated_polynomial(a));
    std::vector<cplx> unit, inside, outside;
    for (const cplx& r : roots) {
        const double m = std::abs(r);
        if (std::abs(m - 1.0) <= tol.unit_circle) unit.push_back(r);
        else if (m < 1.0) inside.push_back(r);
        else outside.push_back(r);
    }

    // Unimodular zeros of an intensity have even multiplicity; pair nearest
    // neighbours and keep one projected representative per pair.
    if (unit.size() % 2 != 0) fail(ErrorKind::Numerical, "root pairing failed");
    while (!unit.empty()) {
        const cplx r = unit.back();
        unit.pop_back();
        auto it = std::min_element(unit.begin(), unit.end(), [&](cplx u, cplx v) {
            return std::abs(u - r) < std::abs(v - r);
        });
        const cplx mid = 0.5 * (r + *it);
        unit.erase(it);
        cat.unit_circle_zeros.push_back(mid / std::abs(mid));
    }

    if (inside.size() != outside.size()) fail(ErrorKind::Numerical, "root pairing failed");
    std::sort(inside.begin(), inside.end(), [](cplx u, cplx v) { return std::abs(u) < std::abs(v); });
    for (const cplx& g : inside) {
        const cplx target = mirror(g);
        auto it = std::min_element(outside.begin(), outside.end(), [&](cplx u, cplx v) {
            return std::abs(u - target) < std::abs(v - target);
        });
        if (std::abs(*it - target) > tol.pairing * std::abs(target))
            fail(ErrorKind::Numerical, "root pairing failed");
        const cplx refined = 0.5 * (g + mirror(*it));
        outside.erase(it);
        cat.zero_pairs.push_back({refined, mirror(refined)});
    }
    return cat;
}

AmbiguityCatalog catalog_from_signal(const Signal& x, const Tolerances& tol) {
    if (x.is_zero()) fail(ErrorKind::InvalidArgument, "empty signal");
    AmbiguityCatalog cat;
    cat.scale = std::sqrt(x.energy());
    cat.support_length = x.length();
    if (x.length() == 1) return cat;
    const AlgebraicPoly p(std::vector<cplx>(x.coeffs().begin(), x.coeffs().end()));
    for (const cplx& r : poly_roots(p)) {
        if (std::abs(std::abs(r) - 1.0) <= tol.unit_circle) cat.unit_circle_zeros.push_back(r);
        else cat.zero_pairs.push_back({r, mirror(r)});
    }
    return cat;
}

Signal flip_candidate(const AmbiguityCatalog& cat, const std::vector<bool>& selection) {
    if (selection.size() != cat.zero_pairs.size())
        fail(ErrorKind::InvalidArgument, "selection length must equal the number of zero pairs");
    std::vector<cplx> roots(cat.unit_circle_zeros);
    for (std::size_t j = 0; j < selection.size(); ++j)
        roots.push_back(selection[j] ? cat.zero_pairs[j].second : cat.zero_pairs[j].first);
    const AlgebraicPoly q = AlgebraicPoly::from_roots(roots);
    std::vector<cplx> c(q.coeffs().begin(), q.coeffs().end());
    double norm = 0.0;
    for (const auto& v : c) norm += std::norm(v);
    const double s = cat.scale / std::sqrt(norm);
    for (auto& v : c) v *= s;
    return canonical_representative(Signal(0, std::move(c)));
}

Enumeration enumerate_ambiguities(const TrigPoly& a_in, const Tolerances& tol, int max_support) {
    const TrigPoly a = a_in.trimmed(tol.support);
    const int n = a.degree() + 1;
    if (n > std::min(max_support, kHardCap))
        fail(ErrorKind::InvalidArgument,
             "support length " + std::to_string(n) + " above enumeration cap " +
                 std::to_string(std::min(max_support, kHardCap)));

    Enumeration out;
    out.catalog = catalog_from_intensity(a, tol);
    const auto groups = group_pairs(out.catalog, tol.pairing);

    std::vector<Signal> reps;
    for_each_count_vector(groups, [&](const std::vector<int>& k) {
        // Keep the lexicographically smaller of k and its global flip.
        std::vector<int> comp(k.size());
        for (std::size_t g = 0; g < k.size(); ++g) comp[g] = groups[g].multiplicity - k[g];
        if (std::lexicographical_compare(comp.rbegin(), comp.rend(), k.rbegin(), k.rend())) return;
        reps.push_back(candidate_from_counts(out.catalog, groups, k));
    });

    const double a0 = a.coeff(0).real();
    for (const Signal& y : reps) {
        if (max_coeff_diff(intensity_function(y), a) > tol.intensity_match * a0)
            fail(ErrorKind::Numerical, "enumerated candidate does not reproduce the intensity");
    }

    // Structural grouping already separates classes; the pairwise pass
    // guards against nearly coinciding zero pairs.
    if (reps.size() <= 4096) {
        for (const Signal& y : reps) {
            const bool dup = std::any_of(out.representatives.begin(), out.representatives.end(),
                                         [&](const Signal& r) {
                                             return trivially_equivalent(r, y, tol.equivalence).has_value();
                                         });
            if (!dup) out.representatives.push_back(y);
        }
    } else {
        out.representatives = std::move(reps);
    }
    return out;
}

std::vector<Signal> all_flip_candidates(const AmbiguityCatalog& cat, const Tolerances& tol) {
    const auto groups = group_pairs(cat, tol.pairing);
    std::vector<Signal> out;
    for_each_count_vector(groups, [&](const std::vector<int>& k) {
        out.push_back(candidate_from_counts(cat, groups, k));
    });
    return out;
}

}  // namespace interfero
