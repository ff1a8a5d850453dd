#pragma once

#include <vector>

#include "perplex/rings.hpp"

namespace perplex {

/// The m-adic filtration data of a localized polynomial ring: the ordered
/// monomial basis of m^s / m^(s+1), i.e. all degree-s monomials in the
/// variables, in lexicographically decreasing exponent order
/// (x^2, xy, y^2 for n = 2, s = 2).
class MaximalIdealFiltration {
public:
    MaximalIdealFiltration(const Ring& ring, int s) : ring_(ring), s_(s) {
        if (ring.kind() != RingKind::localized_poly)
            throw unsupported_ring_error("m-adic filtration requires a localized polynomial ring, got " +
                                         ring.str());
        if (s < 1) throw error("filtration degree must be positive");
        Exps cur(static_cast<std::size_t>(ring.num_vars()), 0);
        enumerate(cur, 0, s);
    }

    const Ring& ring() const { return ring_; }
    int s() const { return s_; }
    const std::vector<Exps>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }

private:
    void enumerate(Exps& cur, int var, int remaining) {
        const int n = ring_.num_vars();
        if (var == n - 1) {
            cur[var] = remaining;
            basis_.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (int d = remaining; d >= 0; --d) {
            cur[var] = d;
            enumerate(cur, var + 1, remaining - d);
        }
        cur[var] = 0;
    }

    Ring ring_;
    int s_;
    std::vector<Exps> basis_;
};

/// Class of `a` in m^s / m^(s+1) as coordinates over the residue field,
/// indexed by filt.basis(). Requires valuation(a) >= s; the result is the
/// zero vector exactly when valuation(a) > s.
inline std::vector<RElem> leading_form(const RElem& a, int s, const MaximalIdealFiltration& filt) {
    if (a.ring() != filt.ring()) throw ring_mismatch_error("element does not match filtration ring");
    if (s != filt.s()) throw shape_mismatch_error("filtration degree does not match s");
    if (!a.valuation().at_least(s))
        throw error("leading form undefined: valuation below " + std::to_string(s));
    const Ring k = a.ring().residue_field();
    const Scalar unit = a.den().constant_term().inverse();
    const Poly h = a.num().homogeneous_part(s) * unit;
    std::vector<RElem> coords;
    coords.reserve(filt.basis().size());
    for (const Exps& e : filt.basis()) coords.push_back(RElem::of_scalar(k, h.coeff(e)));
    return coords;
}

} // namespace perplex
