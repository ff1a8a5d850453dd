#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "perplex/cohomology.hpp"
#include "perplex/generators.hpp"

namespace perplex {

enum class Refinement { invariant_factor, primary };

/// One length <= 1 indecomposable: a single free module at end_degree, or
/// a two-term cyclic piece R --d--> R ending there.
struct Summand {
    int end_degree = 0;
    bool cyclic = false;
    int rank = 1;  // free summands only
    RElem d;       // cyclic summands only; canonical nonzero non-unit
};

struct DecompositionReport {
    Ring ring;
    Refinement refinement = Refinement::invariant_factor;
    std::vector<Summand> summands;
};

namespace detail {

inline void sort_summands(std::vector<Summand>& s) {
    std::stable_sort(s.begin(), s.end(), [](const Summand& a, const Summand& b) {
        if (a.end_degree != b.end_degree) return a.end_degree < b.end_degree;
        if (a.cyclic != b.cyclic) return !a.cyclic;
        if (!a.cyclic) return a.rank < b.rank;
        return a.d.str() < b.d.str();
    });
}

} // namespace detail

/// Decompose a perfect complex over a PID into length <= 1 summands by
/// computing its cohomology: H^i contributes one free summand of its free
/// rank at degree i and one cyclic summand per invariant factor, ending at
/// degree i. Acyclic pieces never appear: the report describes the
/// quasi-isomorphism type.
inline DecompositionReport decompose(const ChainComplex& c) {
    if (!c.ring().is_pid())
        throw unsupported_ring_error("decomposition requires a PID, got " + c.ring().str());
    const CohomologyReport coh = cohomology(c);
    DecompositionReport report{c.ring(), Refinement::invariant_factor, {}};
    for (const auto& [deg, entry] : coh.entries) {
        if (entry.free_rank > 0)
            report.summands.push_back({deg, false, entry.free_rank, RElem::zero(c.ring())});
        for (const RElem& d : entry.invariant_factors) report.summands.push_back({deg, true, 1, d});
    }
    detail::sort_summands(report.summands);
    return report;
}

/// Maximum summand length: 0 when everything is free, 1 when a cyclic
/// summand exists, nullopt ("empty") for the empty report.
inline std::optional<int> audit_width(const DecompositionReport& r) {
    if (r.summands.empty()) return std::nullopt;
    for (const auto& s : r.summands)
        if (s.cyclic) return 1;
    return 0;
}

namespace detail {

inline std::vector<std::pair<Int, int>> factor_integer(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Trial division by monic polynomials in increasing (degree, lex) order.
/// Any candidate that divides the running cofactor is irreducible, because
/// its proper factors were stripped earlier.
inline std::vector<std::pair<Poly, int>> factor_monic_gfp(Poly f) {
    const std::int64_t p = f.characteristic();
    std::vector<std::pair<Poly, int>> out;
    for (int deg = 1; f.degree_in(0) >= 1 && deg <= f.degree_in(0); ++deg) {
        // enumerate monic candidates x^deg + a_{deg-1} x^{deg-1} + ... + a_0
        std::vector<std::int64_t> coef(static_cast<std::size_t>(deg), 0);
        bool done = false;
        while (!done) {
            Poly q = Poly::monomial(1, Exps{deg}, Scalar::one(p));
            for (int i = 0; i < deg; ++i)
                q = q + Poly::monomial(1, Exps{i}, Scalar::residue(Int(coef[static_cast<std::size_t>(i)]), p));
            int e = 0;
            for (;;) {
                Poly quot, rem;
                Poly::divmod_in(f, q, 0, quot, rem);
                if (!rem.is_zero()) break;
                f = quot;
                ++e;
            }
            if (e > 0) out.emplace_back(q, e);
            // increment the base-p counter
            done = true;
            for (std::size_t i = 0; i < coef.size(); ++i) {
                if (++coef[i] < p) { done = false; break; }
                coef[i] = 0;
            }
        }
    }
    return out;
}

} // namespace detail

struct RefineOutcome {
    bool refined = false;
    std::string refusal_reason; // set when not refined
    DecompositionReport report;
};

/// Split every cyclic summand into prime-power pieces. Supported where
/// factorization is: Z (trial division), Z_(p) (canonical factors are
/// already p-powers), GF(p)[x] (trial division by monic irreducibles).
/// Q[x] is refused explicitly; field reports have no torsion and succeed
/// vacuously.
inline RefineOutcome primary_refine(const DecompositionReport& r) {
    RefineOutcome out;
    out.report = r;
    const Ring& ring = r.ring;
    const bool supported = ring.kind() == RingKind::integers ||
                           ring.kind() == RingKind::localized_integers ||
                           (ring.kind() == RingKind::univariate_poly && ring.p() != 0) ||
                           ring.is_field();
    if (!supported) {
        out.refusal_reason = "factorization over " + ring.str() +
                             " is not supported; report stays at invariant-factor level";
        return out;
    }
    std::vector<Summand> refined;
    for (const auto& s : r.summands) {
        if (!s.cyclic) {
            refined.push_back(s);
            continue;
        }
        switch (ring.kind()) {
        case RingKind::integers: {
            for (const auto& [p, e] : detail::factor_integer(s.d.int_value())) {
                Int pe = 1;
                for (int i = 0; i < e; ++i) pe *= p;
                refined.push_back({s.end_degree, true, 1, RElem::of_integer(ring, pe)});
            }
            break;
        }
        case RingKind::localized_integers:
            refined.push_back(s); // canonical invariant factors are p-powers
            break;
        case RingKind::univariate_poly: {
            for (const auto& [q, e] : detail::factor_monic_gfp(s.d.num())) {
                Poly qe = Poly::constant(1, Scalar::one(ring.p()));
                for (int i = 0; i < e; ++i) qe = qe * q;
                refined.push_back({s.end_degree, true, 1, RElem::of_poly(ring, qe)});
            }
            break;
        }
        default:
            refined.push_back(s); // fields: unreachable, no torsion exists
            break;
        }
    }
    detail::sort_summands(refined);
    out.report.summands = std::move(refined);
    out.report.refinement = Refinement::primary;
    out.refined = true;
    return out;
}

// ---- canonical multiset view, for oracle comparisons ----

struct SummandMultiset {
    std::map<int, int> free_by_degree;
    std::multiset<std::pair<int, std::string>> cyclic;

    bool operator==(const SummandMultiset& o) const {
        return free_by_degree == o.free_by_degree && cyclic == o.cyclic;
    }
    bool operator!=(const SummandMultiset& o) const { return !(*this == o); }
};

inline SummandMultiset summand_multiset(const DecompositionReport& r) {
    SummandMultiset m;
    for (const auto& s : r.summands) {
        if (s.cyclic)
            m.cyclic.emplace(s.end_degree, s.d.str());
        else
            m.free_by_degree[s.end_degree] += s.rank;
    }
    return m;
}

/// The plan of a planted decomposition as a report (cyclic differentials
/// canonicalized), so that both sides of the round-trip oracle can be
/// primary-refined and compared as multisets.
inline DecompositionReport report_from_plan(const Ring& ring, const std::vector<SummandSpec>& plan) {
    DecompositionReport report{ring, Refinement::invariant_factor, {}};
    for (const auto& s : plan) {
        if (s.cyclic)
            report.summands.push_back({s.end_degree, true, 1, s.d * s.d.canonical_unit()});
        else
            report.summands.push_back({s.end_degree, false, 1, RElem::zero(ring)});
    }
    detail::sort_summands(report.summands);
    return report;
}

} // namespace perplex
