#pragma once

#include <utility>

#include "perplex/matrix.hpp"

namespace perplex {

/// Invertible transforms u, v with d = u * m * v diagonal, d1 | d2 | ...,
/// diagonal entries canonical (nonnegative over Z, monic over k[x],
/// powers of p over Z_(p), 1 over fields).
struct SmithResult {
    Matrix u, d, v;
};

namespace detail {

/// Pivot choice: smallest Euclidean size, ties broken row-major.
inline bool find_pivot(const Matrix& d, int t, int& pr, int& pc) {
    bool found = false;
    Int best = 0;
    for (int i = t; i < d.rows(); ++i)
        for (int j = t; j < d.cols(); ++j) {
            if (d.at(i, j).is_zero()) continue;
            const Int size = d.at(i, j).euclidean_size();
            if (!found || size < best) {
                found = true;
                best = size;
                pr = i;
                pc = j;
            }
        }
    return found;
}

} // namespace detail

inline SmithResult smith_normal_form(const Matrix& m) {
    if (!m.ring().is_pid())
        throw unsupported_ring_error("Smith normal form requires a PID, got " + m.ring().str());
    const Ring& ring = m.ring();
    SmithResult res{Matrix::identity(ring, m.rows()), m, Matrix::identity(ring, m.cols())};
    Matrix& u = res.u;
    Matrix& d = res.d;
    Matrix& v = res.v;

    const int steps = std::min(m.rows(), m.cols());
    for (int t = 0; t < steps; ++t) {
        int pr = 0, pc = 0;
        if (!detail::find_pivot(d, t, pr, pc)) break;
        if (pr != t) { d.row_swap(pr, t); u.row_swap(pr, t); }
        if (pc != t) { d.col_swap(pc, t); v.col_swap(pc, t); }

        for (;;) {
            // clear below the pivot with row operations; a nonzero remainder
            // becomes the new, strictly smaller pivot
            bool restart = false;
            for (int i = t + 1; i < d.rows() && !restart; ++i) {
                if (d.at(i, t).is_zero()) continue;
                const RElem q = d.at(i, t).divmod(d.at(t, t)).first;
                if (!q.is_zero()) {
                    d.row_axpy(i, t, -q);
                    u.row_axpy(i, t, -q);
                }
                if (!d.at(i, t).is_zero()) {
                    d.row_swap(i, t);
                    u.row_swap(i, t);
                    restart = true;
                }
            }
            if (restart) continue;
            // clear to the right of the pivot with column operations
            for (int j = t + 1; j < d.cols() && !restart; ++j) {
                if (d.at(t, j).is_zero()) continue;
                const RElem q = d.at(t, j).divmod(d.at(t, t)).first;
                if (!q.is_zero()) {
                    d.col_axpy(j, t, -q);
                    v.col_axpy(j, t, -q);
                }
                if (!d.at(t, j).is_zero()) {
                    d.col_swap(j, t);
                    v.col_swap(j, t);
                    restart = true;
                }
            }
            if (restart) continue;
            // divisibility fixup: fold an offending row into the pivot row
            bool fixed_up = false;
            for (int i = t + 1; i < d.rows() && !fixed_up; ++i)
                for (int j = t + 1; j < d.cols() && !fixed_up; ++j)
                    if (!d.at(i, j).divisible_by(d.at(t, t))) {
                        d.row_axpy(t, i, RElem::one(ring));
                        u.row_axpy(t, i, RElem::one(ring));
                        fixed_up = true;
                    }
            if (!fixed_up) break;
        }
    }

    for (int k = 0; k < steps; ++k) {
        if (d.at(k, k).is_zero()) continue;
        const RElem unit = d.at(k, k).canonical_unit();
        if (!unit.is_one()) {
            d.row_scale(k, unit);
            u.row_scale(k, unit);
        }
    }
    return res;
}

/// Nonzero diagonal entries of the Smith form, in divisibility order.
inline std::vector<RElem> smith_diagonal(const Matrix& m) {
    const SmithResult s = smith_normal_form(m);
    std::vector<RElem> out;
    for (int k = 0; k < std::min(m.rows(), m.cols()); ++k)
        if (!s.d.at(k, k).is_zero()) out.push_back(s.d.at(k, k));
    return out;
}

inline int rank(const Matrix& m) {
    return static_cast<int>(smith_diagonal(m).size());
}

} // namespace perplex
