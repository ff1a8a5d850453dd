#pragma once

#include <string>
#include <vector>

#include "perplex/complex.hpp"
#include "perplex/filtration.hpp"
#include "perplex/snf.hpp"

namespace perplex {

struct DifferentialCheck {
    int degree = 0;           // differential out of this degree
    int s = 0;                // filtration depth: minimum entry valuation
    int injectivity_rank = 0; // rank of the induced residue-field matrix
    int rows = 0, cols = 0;   // shape of the differential itself
};

/// Certificate for the one-sided irreducibility criterion with the ideal
/// fixed to the maximal ideal: (a) rank 1 in the top degree, (b) every
/// differential lands in m^s with injective induced map to the associated
/// graded. `certified` implies the complex is indecomposable; a refusal
/// carries no converse information.
struct IrreducibilityCertificate {
    Ring ring;
    int top_degree = 0;
    std::vector<DifferentialCheck> differentials;
    bool certified = false;
    std::string refusal_reason; // empty when certified
    int refused_degree = 0;     // degree of the failing condition when refused
};

namespace detail {

/// The induced map F^i/mF^i -> (m^s/m^(s+1)) (x) F^(i+1) as a residue-field
/// matrix: one row block of monomial coordinates per target basis element.
inline Matrix induced_graded_matrix(const Matrix& d, int s) {
    const MaximalIdealFiltration filt(d.ring(), s);
    const Ring k = d.ring().residue_field();
    Matrix out(k, d.rows() * filt.dim(), d.cols());
    for (int t = 0; t < d.rows(); ++t)
        for (int j = 0; j < d.cols(); ++j) {
            const auto coords = leading_form(d.at(t, j), s, filt);
            for (int b = 0; b < filt.dim(); ++b) out.at(t * filt.dim() + b, j) = coords[static_cast<std::size_t>(b)];
        }
    return out;
}

} // namespace detail

/// Search for an irreducibility certificate of a complex over a localized
/// polynomial ring. Per differential, s is the minimum entry valuation
/// (the only depth at which containment and a nonzero leading form can
/// coexist); a zero differential with a nonzero source refuses.
inline IrreducibilityCertificate find_certificate(const ChainComplex& c) {
    if (c.ring().kind() != RingKind::localized_poly)
        throw unsupported_ring_error("certificates require a localized polynomial ring, got " +
                                     c.ring().str());
    const ChainComplex t = c.trimmed();
    if (t.is_empty()) throw error("cannot certify an empty complex");
    const ValidationResult vr = validate(t);
    if (!vr.ok) throw invalid_complex_error(vr.message);

    IrreducibilityCertificate cert;
    cert.ring = c.ring();
    cert.top_degree = t.max_deg();
    if (t.rank(t.max_deg()) != 1) {
        cert.refusal_reason = "condition (a) fails: rank " + std::to_string(t.rank(t.max_deg())) +
                              " in top degree " + std::to_string(t.max_deg());
        cert.refused_degree = t.max_deg();
        return cert;
    }
    for (int deg = t.min_deg(); deg < t.max_deg(); ++deg) {
        const Matrix d = t.differential(deg);
        DifferentialCheck check{deg, 1, 0, d.rows(), d.cols()};
        if (d.cols() == 0) { // nothing to embed
            cert.differentials.push_back(check);
            continue;
        }
        Valuation min_val = Valuation::infinity();
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) {
                const Valuation v = d.at(i, j).valuation();
                if (v < min_val) min_val = v;
            }
        if (min_val.is_infinite()) {
            cert.refusal_reason = "condition (b) fails: zero differential with nonzero source at degree " +
                                  std::to_string(deg);
            cert.refused_degree = deg;
            return cert;
        }
        check.s = static_cast<int>(min_val.value());
        check.injectivity_rank = rank(detail::induced_graded_matrix(d, check.s));
        cert.differentials.push_back(check);
        if (check.injectivity_rank != d.cols()) {
            cert.refusal_reason = "condition (b) fails: induced map at degree " + std::to_string(deg) +
                                  " has rank " + std::to_string(check.injectivity_rank) + " < " +
                                  std::to_string(d.cols());
            cert.refused_degree = deg;
            return cert;
        }
    }
    cert.certified = true;
    return cert;
}

/// Recheck every certificate condition against the complex, using the
/// certificate's own s values. True means the criterion holds, hence the
/// complex is indecomposable. Shape disagreements are errors, not verdicts.
inline bool verify_certificate(const ChainComplex& c, const IrreducibilityCertificate& cert) {
    if (c.ring() != cert.ring) throw shape_mismatch_error("certificate ring does not match complex");
    const ChainComplex t = c.trimmed();
    if (t.is_empty()) throw shape_mismatch_error("certificate for an empty complex");
    if (!cert.certified) return false;
    if (t.max_deg() != cert.top_degree ||
        static_cast<int>(cert.differentials.size()) != t.max_deg() - t.min_deg())
        throw shape_mismatch_error("certificate shape does not match complex");
    if (t.rank(t.max_deg()) != 1) return false;
    for (const auto& check : cert.differentials) {
        const Matrix d = t.differential(check.degree);
        if (d.rows() != check.rows || d.cols() != check.cols)
            throw shape_mismatch_error("certificate shape does not match differential at degree " +
                                       std::to_string(check.degree));
        if (d.cols() == 0) continue;
        if (check.s < 1) return false;
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j)
                if (!d.at(i, j).valuation().at_least(check.s)) return false;
        if (rank(detail::induced_graded_matrix(d, check.s)) != d.cols()) return false;
    }
    return true;
}

} // namespace perplex
