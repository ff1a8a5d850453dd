#pragma once

#include <map>
#include <vector>

#include "perplex/complex.hpp"
#include "perplex/snf.hpp"

namespace perplex {

struct CohomologyEntry {
    int free_rank = 0;
    std::vector<RElem> invariant_factors; // canonical non-units, in divisibility order

    bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool operator==(const CohomologyEntry& o) const {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }
};

/// Degreewise H^i = ker(d_i)/im(d_(i-1)); only nontrivial degrees are stored,
/// so reports of quasi-isomorphic complexes compare equal.
struct CohomologyReport {
    Ring ring;
    std::map<int, CohomologyEntry> entries;

    CohomologyEntry at(int deg) const {
        auto it = entries.find(deg);
        return it == entries.end() ? CohomologyEntry{} : it->second;
    }

    bool operator==(const CohomologyReport& o) const {
        return ring == o.ring && entries == o.entries;
    }
    bool operator!=(const CohomologyReport& o) const { return !(*this == o); }
};

namespace detail {

/// Basis of ker(d) as columns, via the Smith transform of d.
inline Matrix kernel_basis(const Matrix& d) {
    const SmithResult s = smith_normal_form(d);
    std::vector<int> zero_cols;
    for (int j = 0; j < d.cols(); ++j) {
        const bool diag_nonzero = j < d.rows() && !s.d.at(j, j).is_zero();
        if (!diag_nonzero) zero_cols.push_back(j);
    }
    Matrix k(d.ring(), d.cols(), static_cast<int>(zero_cols.size()));
    for (int out = 0; out < static_cast<int>(zero_cols.size()); ++out)
        for (int i = 0; i < d.cols(); ++i) k.at(i, out) = s.v.at(i, zero_cols[static_cast<std::size_t>(out)]);
    return k;
}

/// Solve K X = B for X where the columns of B lie in the column span of K
/// and K has full column rank (true for a kernel basis receiving an image).
inline Matrix solve_in_basis(const Matrix& k, const Matrix& b) {
    const SmithResult s = smith_normal_form(k);
    const Matrix bp = s.u * b;
    Matrix y(k.ring(), k.cols(), b.cols());
    for (int t = 0; t < k.cols(); ++t) {
        const RElem& pivot = s.d.at(t, t);
        for (int j = 0; j < b.cols(); ++j) y.at(t, j) = bp.at(t, j).exact_div(pivot);
    }
    for (int t = k.cols(); t < k.rows(); ++t)
        for (int j = 0; j < b.cols(); ++j)
            if (!bp.at(t, j).is_zero())
                throw error("image does not lie in the kernel (complex invalid?)");
    return s.v * y;
}

} // namespace detail

/// Exact cohomology over a field or PID. The free rank and invariant
/// factors of each H^i are computed from Smith forms: a kernel basis for
/// d_i, then the inclusion matrix of im(d_(i-1)) in that basis.
inline CohomologyReport cohomology(const ChainComplex& c) {
    if (!c.ring().is_pid())
        throw unsupported_ring_error("cohomology requires a field or PID, got " + c.ring().str());
    const ValidationResult vr = validate(c);
    if (!vr.ok) throw invalid_complex_error(vr.message);
    CohomologyReport report{c.ring(), {}};
    if (c.is_empty()) return report;
    for (int deg = c.min_deg(); deg <= c.max_deg(); ++deg) {
        if (c.rank(deg) == 0) continue;
        const Matrix kernel = detail::kernel_basis(c.differential(deg));
        const Matrix incl = detail::solve_in_basis(kernel, c.differential(deg - 1));
        const SmithResult s = smith_normal_form(incl);
        CohomologyEntry entry;
        int nonzero = 0;
        for (int t = 0; t < std::min(incl.rows(), incl.cols()); ++t) {
            const RElem& e = s.d.at(t, t);
            if (e.is_zero()) continue;
            ++nonzero;
            if (!e.is_unit()) entry.invariant_factors.push_back(e);
        }
        entry.free_rank = kernel.cols() - nonzero;
        if (!entry.trivial()) report.entries[deg] = entry;
    }
    return report;
}

} // namespace perplex
