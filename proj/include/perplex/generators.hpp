#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "perplex/complex.hpp"
#include "perplex/rng.hpp"

namespace perplex {

namespace detail {

inline std::vector<std::vector<int>> subsets_lex(int n, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > n) return out;
    std::vector<int> cur;
    const auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (p - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline int subset_index(const std::vector<std::vector<int>>& all, const std::vector<int>& s) {
    const auto it = std::lower_bound(all.begin(), all.end(), s);
    return static_cast<int>(it - all.begin());
}

/// Koszul differential out of degree -p: contraction of wedge monomials
/// against (x_1..x_n) with alternating signs; shape C(n,p-1) x C(n,p).
inline Matrix koszul_diff(const Ring& ring, int p) {
    const int n = ring.num_vars();
    const auto src = subsets_lex(n, p);
    const auto dst = subsets_lex(n, p - 1);
    Matrix m(ring, static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (int col = 0; col < static_cast<int>(src.size()); ++col) {
        const auto& s = src[static_cast<std::size_t>(col)];
        for (int idx = 0; idx < p; ++idx) {
            std::vector<int> t = s;
            t.erase(t.begin() + idx);
            const int row = subset_index(dst, t);
            RElem entry = RElem::variable(ring, s[static_cast<std::size_t>(idx)]);
            if (idx % 2 != 0) entry = -entry;
            m.at(row, col) = entry;
        }
    }
    return m;
}

} // namespace detail

/// Koszul complex on the variable sequence of a localized polynomial ring:
/// degrees -n..0, rank C(n,p) at degree -p, basis the wedge monomials in
/// lexicographic order.
inline ChainComplex koszul(const Ring& ring) {
    if (ring.kind() != RingKind::localized_poly)
        throw unsupported_ring_error("Koszul generator wants a localized polynomial ring, got " +
                                     ring.str());
    const int n = ring.num_vars();
    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    for (int p = n; p >= 0; --p) ranks.push_back(static_cast<int>(detail::subsets_lex(n, p).size()));
    for (int p = n; p >= 1; --p) diffs.push_back(detail::koszul_diff(ring, p));
    return ChainComplex::build(ring, -n, std::move(ranks), std::move(diffs));
}

/// The length-n member of the F-family over a two-variable localized ring:
/// rank 1 in degree 0, rank 2 in degrees -n..-1, interior differential
/// [[xy, y^2], [-x^2, -xy]] and final differential [x, y].
inline ChainComplex f_n(const Ring& ring, int n) {
    if (ring.kind() != RingKind::localized_poly || ring.num_vars() != 2)
        throw unsupported_ring_error("F-family generator wants a 2-variable localized ring, got " +
                                     ring.str());
    if (n < 1) throw error("F-family needs length >= 1");
    const RElem x = RElem::variable(ring, 0);
    const RElem y = RElem::variable(ring, 1);
    const Matrix interior = Matrix::from_rows(ring, {{x * y, y * y}, {-(x * x), -(x * y)}});
    Matrix last(ring, 1, 2);
    last.at(0, 0) = x;
    last.at(0, 1) = y;
    std::vector<int> ranks(static_cast<std::size_t>(n), 2);
    ranks.push_back(1);
    std::vector<Matrix> diffs(static_cast<std::size_t>(n - 1), interior);
    diffs.push_back(last);
    return ChainComplex::build(ring, -n, std::move(ranks), std::move(diffs));
}

namespace detail {

inline Matrix glue_matrix_for(const Ring& ring, const std::vector<int>& signs) {
    const int n = ring.num_vars();
    const auto rows = subsets_lex(n, n - 1);
    Matrix g(ring, n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<int> complement;
        for (int t = 0; t < n; ++t)
            if (t != j) complement.push_back(t);
        const int row = subset_index(rows, complement);
        for (int i = 0; i < n; ++i) {
            RElem entry = RElem::variable(ring, i) * RElem::variable(ring, j);
            if (signs[static_cast<std::size_t>(j)] < 0) entry = -entry;
            g.at(row, i) = entry;
        }
    }
    return g;
}

} // namespace detail

/// Sign vector for the degree-2 glue differential
/// e_i -> sum_j sign_j x_i x_j e_1^..^ê_j^..^e_n, found by brute force over
/// the 2^n candidates and verified against both boundary compositions
/// (and against glue.glue for n = 2, where glue maps compose directly).
inline std::vector<int> koszul_glue_signs(const Ring& ring) {
    const int n = ring.num_vars();
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, int>, std::vector<int>> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find({ring.p(), n});
        if (it != cache.end()) return it->second;
    }

    const Matrix lower_top = detail::koszul_diff(ring, 2);       // K^{-2} -> K^{-1}
    const Matrix upper_next = detail::koszul_diff(ring, n - 1);  // K^{-n+1} -> K^{-n+2}
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> signs(static_cast<std::size_t>(n), 1);
        for (int j = 0; j < n; ++j)
            if (mask & (1 << j)) signs[static_cast<std::size_t>(j)] = -1;
        const Matrix g = detail::glue_matrix_for(ring, signs);
        if (!(g * lower_top).is_zero()) continue;
        if (!(upper_next * g).is_zero()) continue;
        if (n == 2 && !(g * g).is_zero()) continue;
        std::lock_guard<std::mutex> lock(mutex);
        cache[{ring.p(), n}] = signs;
        return signs;
    }
    throw error("no glue sign vector found (unreachable for n >= 2)");
}

namespace detail {

inline Matrix glue_matrix(const Ring& ring) {
    return glue_matrix_for(ring, koszul_glue_signs(ring));
}

} // namespace detail

/// Chain of m+1 truncated Koszul segments joined by m copies of the
/// degree-2 glue differential; m = 1 is the iterated Koszul complex.
/// Top degree is 0; the bottom segment keeps its rank-1 wedge top.
inline ChainComplex multi_iterated_koszul(const Ring& ring, int m) {
    if (ring.kind() != RingKind::localized_poly || ring.num_vars() < 2)
        throw unsupported_ring_error("iterated Koszul wants a localized ring with >= 2 variables, got " +
                                     ring.str());
    if (m < 1) throw error("need at least one glue junction");
    const int n = ring.num_vars();
    const Matrix glue = detail::glue_matrix(ring);

    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    const auto binom = [&](int p) {
        return static_cast<int>(detail::subsets_lex(n, p).size());
    };
    // bottom segment: K^{-n}..K^{-1}
    for (int p = n; p >= 1; --p) {
        ranks.push_back(binom(p));
        if (p >= 2) diffs.push_back(detail::koszul_diff(ring, p));
    }
    for (int seg = 0; seg < m; ++seg) {
        diffs.push_back(glue);
        const bool last = seg + 1 == m;
        // interior segments: K^{-n+1}..K^{-1}; top segment: K^{-n+1}..K^0
        for (int p = n - 1; p >= (last ? 0 : 1); --p) {
            ranks.push_back(binom(p));
            if (p >= (last ? 1 : 2)) diffs.push_back(detail::koszul_diff(ring, p));
        }
    }
    const int total = static_cast<int>(ranks.size());
    return ChainComplex::build(ring, -(total - 1), std::move(ranks), std::move(diffs));
}

inline ChainComplex iterated_koszul(const Ring& ring) { return multi_iterated_koszul(ring, 1); }

// ---- seeded scrambler ----

struct ScrambleConfig {
    int ops_per_degree = 8;
    bool constants_only = false; // restrict mixing coefficients to the base field
};

namespace detail {

inline std::vector<RElem> axpy_pool(const Ring& ring, bool constants_only) {
    std::vector<RElem> pool;
    for (long long v : {1, -1, 2, -2}) {
        const RElem e = RElem::from_int(ring, v);
        if (!e.is_zero()) pool.push_back(e);
    }
    if (ring.is_poly_ring() && !constants_only)
        for (int i = 0; i < ring.num_vars(); ++i) {
            pool.push_back(RElem::variable(ring, i));
            pool.push_back(-RElem::variable(ring, i));
        }
    return pool;
}

struct ElementaryOp {
    enum Kind { swap, scale, axpy } kind;
    int i, j;
    RElem coeff; // axpy coefficient or scale unit
};

inline std::vector<ElementaryOp> sample_ops(const Ring& ring, int rank, SplitMix64& rng,
                                            const ScrambleConfig& cfg,
                                            const std::vector<RElem>& pool) {
    std::vector<ElementaryOp> ops;
    if (rank < 1) return ops;
    for (int t = 0; t < cfg.ops_per_degree; ++t) {
        const std::uint64_t kind = rng.below(rank >= 2 ? 5 : 1);
        if (rank >= 2 && kind <= 2) { // weighted towards mixing
            int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank - 1)));
            if (j >= i) ++j;
            ops.push_back({ElementaryOp::axpy, i, j, pool[rng.below(pool.size())]});
        } else if (rank >= 2 && kind == 3) {
            int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank - 1)));
            if (j >= i) ++j;
            ops.push_back({ElementaryOp::swap, i, j, RElem::one(ring)});
        } else {
            const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank)));
            ops.push_back({ElementaryOp::scale, i, i, RElem::from_int(ring, -1)});
        }
    }
    return ops;
}

} // namespace detail

/// Conjugate every degree by a seed-determined invertible matrix (a short
/// product of elementary operations). The result is isomorphic to the
/// input as a complex, so all quasi-isomorphism invariants are preserved.
inline ChainComplex scramble_complex(const ChainComplex& c, std::uint64_t seed,
                                     const ScrambleConfig& cfg = {}) {
    if (c.is_empty()) return c;
    const Ring& ring = c.ring();
    const auto pool = detail::axpy_pool(ring, cfg.constants_only);
    std::vector<Matrix> diffs;
    for (int deg = c.min_deg(); deg < c.max_deg(); ++deg) diffs.push_back(c.diff_at(deg));

    for (int deg = c.min_deg(); deg <= c.max_deg(); ++deg) {
        SplitMix64 rng = SplitMix64::derived(seed, static_cast<std::uint64_t>(deg - c.min_deg()));
        const auto ops = detail::sample_ops(ring, c.rank(deg), rng, cfg, pool);
        const int below = deg - 1 - c.min_deg(); // incoming differential index
        const int at = deg - c.min_deg();        // outgoing differential index
        for (const auto& op : ops) {
            // basis change E at this degree: rows of the incoming matrix,
            // inverse columns of the outgoing one
            if (below >= 0) {
                Matrix& l = diffs[static_cast<std::size_t>(below)];
                switch (op.kind) {
                case detail::ElementaryOp::swap: l.row_swap(op.i, op.j); break;
                case detail::ElementaryOp::scale: l.row_scale(op.i, op.coeff); break;
                case detail::ElementaryOp::axpy: l.row_axpy(op.i, op.j, op.coeff); break;
                }
            }
            if (at < static_cast<int>(diffs.size())) {
                Matrix& r = diffs[static_cast<std::size_t>(at)];
                switch (op.kind) {
                case detail::ElementaryOp::swap: r.col_swap(op.i, op.j); break;
                case detail::ElementaryOp::scale: r.col_scale(op.i, op.coeff.inv_unit()); break;
                case detail::ElementaryOp::axpy: r.col_axpy(op.j, op.i, -op.coeff); break;
                }
            }
        }
    }
    return ChainComplex::build(ring, c.min_deg(), c.rank_vector(), std::move(diffs));
}

// ---- planted decompositions (the round-trip oracle) ----

struct SummandSpec {
    int end_degree = 0;
    bool cyclic = false;
    RElem d; // cyclic only: nonzero non-unit
};

/// A scrambled direct sum of length <= 1 pieces together with the plan it
/// was built from; `decompose` must recover the plan.
struct PlantedDecomposition {
    std::vector<SummandSpec> summands;
    std::uint64_t seed = 0;
    ChainComplex complex;

    PlantedDecomposition() : complex(Ring::integers()) {}
};

inline PlantedDecomposition scrambled_sum(const Ring& ring, const std::vector<SummandSpec>& plan,
                                          std::uint64_t seed, const ScrambleConfig& cfg = {}) {
    if (!ring.is_pid())
        throw unsupported_ring_error("planted sums are defined over PIDs, got " + ring.str());
    if (plan.empty()) throw error("empty plan");
    ChainComplex sum(ring);
    for (const auto& s : plan) {
        if (s.cyclic) {
            if (s.d.ring() != ring) throw ring_mismatch_error("plan entry over the wrong ring");
            if (s.d.is_zero() || s.d.is_unit())
                throw error("cyclic summand needs a nonzero non-unit differential");
            Matrix d(ring, 1, 1);
            d.at(0, 0) = s.d;
            sum = direct_sum(sum, ChainComplex::build(ring, s.end_degree - 1, {1, 1}, {d}));
        } else {
            sum = direct_sum(sum, ChainComplex::build(ring, s.end_degree, {1}, {}));
        }
    }
    PlantedDecomposition out;
    out.summands = plan;
    out.seed = seed;
    out.complex = scramble_complex(sum, seed, cfg);
    return out;
}

} // namespace perplex
