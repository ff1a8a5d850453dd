#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perplex/matrix.hpp"

namespace perplex {

struct ValidationResult {
    bool ok = true;
    std::string message;
    int degree = 0;
    int row = -1;
    int col = -1;

    static ValidationResult success() { return {}; }
    static ValidationResult violation(std::string msg, int degree, int row, int col) {
        return {false, std::move(msg), degree, row, col};
    }
};

/// Bounded complex of finite free modules, in cohomological indexing.
/// Differentials raise degree by one and act by left multiplication on
/// column vectors: diff(i) has shape rank(i+1) x rank(i).
class ChainComplex {
public:
    explicit ChainComplex(const Ring& ring) : ring_(ring), min_deg_(0) {}

    static ChainComplex build(const Ring& ring, int min_deg, std::vector<int> ranks,
                              std::vector<Matrix> diffs) {
        ChainComplex c(ring);
        if (ranks.empty()) {
            if (!diffs.empty()) throw shape_mismatch_error("differentials without modules");
            return c;
        }
        if (diffs.size() + 1 != ranks.size())
            throw shape_mismatch_error("need exactly one differential between adjacent degrees");
        for (std::size_t i = 0; i < ranks.size(); ++i)
            if (ranks[i] < 0) throw shape_mismatch_error("negative rank");
        for (std::size_t i = 0; i < diffs.size(); ++i) {
            if (diffs[i].ring() != ring) throw ring_mismatch_error("differential over the wrong ring");
            if (diffs[i].rows() != ranks[i + 1] || diffs[i].cols() != ranks[i])
                throw shape_mismatch_error("differential at degree " +
                                           std::to_string(min_deg + static_cast<int>(i)) +
                                           " has the wrong shape");
        }
        c.min_deg_ = min_deg;
        c.ranks_ = std::move(ranks);
        c.diffs_ = std::move(diffs);
        return c;
    }

    const Ring& ring() const { return ring_; }
    bool is_empty() const { return ranks_.empty(); }

    int min_deg() const {
        if (is_empty()) throw error("empty complex has no degrees");
        return min_deg_;
    }
    int max_deg() const {
        if (is_empty()) throw error("empty complex has no degrees");
        return min_deg_ + static_cast<int>(ranks_.size()) - 1;
    }

    int rank(int deg) const {
        if (is_empty() || deg < min_deg_ || deg > max_deg()) return 0;
        return ranks_[static_cast<std::size_t>(deg - min_deg_)];
    }

    const std::vector<int>& rank_vector() const { return ranks_; }

    std::map<int, int> rank_map() const {
        std::map<int, int> m;
        for (std::size_t i = 0; i < ranks_.size(); ++i)
            m[min_deg_ + static_cast<int>(i)] = ranks_[i];
        return m;
    }

    bool has_diff(int deg) const {
        return !is_empty() && deg >= min_deg_ && deg < max_deg();
    }

    const Matrix& diff_at(int deg) const {
        if (!has_diff(deg)) throw error("no differential at degree " + std::to_string(deg));
        return diffs_[static_cast<std::size_t>(deg - min_deg_)];
    }

    /// Differential out of `deg`, a zero matrix of the right shape when the
    /// degree lies outside the stored range.
    Matrix differential(int deg) const {
        if (has_diff(deg)) return diff_at(deg);
        return Matrix(ring_, rank(deg + 1), rank(deg));
    }

    /// Length over the degrees with nonzero rank; nullopt ("empty") when
    /// every rank vanishes.
    std::optional<int> length() const {
        int lo = 0, hi = 0;
        bool seen = false;
        for (std::size_t i = 0; i < ranks_.size(); ++i) {
            if (ranks_[i] == 0) continue;
            const int deg = min_deg_ + static_cast<int>(i);
            if (!seen) lo = deg;
            hi = deg;
            seen = true;
        }
        if (!seen) return std::nullopt;
        return hi - lo;
    }

    /// Drop zero-rank degrees at both ends of the range.
    ChainComplex trimmed() const {
        std::size_t lo = 0, hi = ranks_.size();
        while (lo < hi && ranks_[lo] == 0) ++lo;
        while (hi > lo && ranks_[hi - 1] == 0) --hi;
        if (lo == hi) return ChainComplex(ring_);
        std::vector<int> ranks(ranks_.begin() + static_cast<std::ptrdiff_t>(lo),
                               ranks_.begin() + static_cast<std::ptrdiff_t>(hi));
        std::vector<Matrix> diffs;
        for (std::size_t i = lo; i + 1 < hi; ++i) diffs.push_back(diffs_[i]);
        return build(ring_, min_deg_ + static_cast<int>(lo), std::move(ranks), std::move(diffs));
    }

    bool operator==(const ChainComplex& o) const {
        return ring_ == o.ring_ && (is_empty() ? o.is_empty()
                                               : (!o.is_empty() && min_deg_ == o.min_deg_ &&
                                                  ranks_ == o.ranks_ && diffs_ == o.diffs_));
    }
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

private:
    Ring ring_;
    int min_deg_;
    std::vector<int> ranks_;
    std::vector<Matrix> diffs_;
};

/// Checks shape consistency and d(i+1) . d(i) = 0 in every degree; reports
/// the first violation with its degree and matrix position.
inline ValidationResult validate(const ChainComplex& c) {
    if (c.is_empty()) return ValidationResult::success();
    for (int deg = c.min_deg(); deg + 1 < c.max_deg(); ++deg) {
        const Matrix prod = c.differential(deg + 1) * c.differential(deg);
        for (int i = 0; i < prod.rows(); ++i)
            for (int j = 0; j < prod.cols(); ++j)
                if (!prod.at(i, j).is_zero())
                    return ValidationResult::violation(
                        "composition d(" + std::to_string(deg + 1) + ") . d(" + std::to_string(deg) +
                            ") is nonzero at entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            "): " + prod.at(i, j).str(),
                        deg, i, j);
    }
    return ValidationResult::success();
}

/// Translation functor: shift(c, k)^i = c^(i+k), differentials scaled by
/// (-1)^k.
inline ChainComplex shift(const ChainComplex& c, int k) {
    if (c.is_empty()) return c;
    std::vector<int> ranks = c.rank_vector();
    std::vector<Matrix> diffs;
    const bool flip = (k % 2) != 0;
    const RElem sign = RElem::from_int(c.ring(), -1);
    for (int deg = c.min_deg(); deg < c.max_deg(); ++deg) {
        Matrix m = c.diff_at(deg);
        if (flip) m = m.scaled(sign);
        diffs.push_back(std::move(m));
    }
    return ChainComplex::build(c.ring(), c.min_deg() - k, std::move(ranks), std::move(diffs));
}

inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    if (a.ring() != b.ring()) throw ring_mismatch_error("direct sum over different rings");
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    const int lo = std::min(a.min_deg(), b.min_deg());
    const int hi = std::max(a.max_deg(), b.max_deg());
    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    for (int deg = lo; deg <= hi; ++deg) ranks.push_back(a.rank(deg) + b.rank(deg));
    for (int deg = lo; deg < hi; ++deg)
        diffs.push_back(Matrix::block_diag(a.differential(deg), b.differential(deg)));
    return ChainComplex::build(a.ring(), lo, std::move(ranks), std::move(diffs));
}

/// Brutal truncation keeping degrees >= a.
inline ChainComplex truncate(const ChainComplex& c, int a) {
    if (c.is_empty()) return c;
    if (a < c.min_deg() || a > c.max_deg())
        throw error("truncation degree outside the complex range");
    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    for (int deg = a; deg <= c.max_deg(); ++deg) ranks.push_back(c.rank(deg));
    for (int deg = a; deg < c.max_deg(); ++deg) diffs.push_back(c.diff_at(deg));
    return ChainComplex::build(c.ring(), a, std::move(ranks), std::move(diffs));
}

/// Entrywise reduction to the residue field of a local ring; ranks are
/// preserved.
inline ChainComplex reduce_mod_maximal(const ChainComplex& c) {
    if (!c.ring().is_local())
        throw unsupported_ring_error("reduction mod m requires a local ring, got " + c.ring().str());
    const Ring k = c.ring().residue_field();
    if (c.is_empty()) return ChainComplex(k);
    std::vector<int> ranks = c.rank_vector();
    std::vector<Matrix> diffs;
    for (int deg = c.min_deg(); deg < c.max_deg(); ++deg) {
        const Matrix& m = c.diff_at(deg);
        Matrix r(k, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).residue();
        diffs.push_back(std::move(r));
    }
    return ChainComplex::build(k, c.min_deg(), std::move(ranks), std::move(diffs));
}

/// Degreewise map between complexes; absent components are zero.
struct ChainMap {
    ChainComplex src, dst;
    std::map<int, Matrix> parts;

    ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components = {})
        : src(std::move(source)), dst(std::move(target)), parts(std::move(components)) {
        if (src.ring() != dst.ring()) throw ring_mismatch_error("chain map over different rings");
        for (const auto& [deg, m] : parts) {
            if (m.ring() != src.ring()) throw ring_mismatch_error("component over the wrong ring");
            if (m.rows() != dst.rank(deg) || m.cols() != src.rank(deg))
                throw shape_mismatch_error("component at degree " + std::to_string(deg) +
                                           " has the wrong shape");
        }
    }

    Matrix component(int deg) const {
        auto it = parts.find(deg);
        if (it != parts.end()) return it->second;
        return Matrix(src.ring(), dst.rank(deg), src.rank(deg));
    }

    /// First degree where d_dst . f != f . d_src, if any.
    std::optional<int> first_non_commuting_degree() const {
        if (src.is_empty() && dst.is_empty()) return std::nullopt;
        int lo = src.is_empty() ? dst.min_deg() : src.min_deg();
        int hi = src.is_empty() ? dst.max_deg() : src.max_deg();
        if (!dst.is_empty()) {
            lo = std::min(lo, dst.min_deg());
            hi = std::max(hi, dst.max_deg());
        }
        for (int deg = lo - 1; deg <= hi; ++deg) {
            const Matrix lhs = dst.differential(deg) * component(deg);
            const Matrix rhs = component(deg + 1) * src.differential(deg);
            if (lhs != rhs) return deg;
        }
        return std::nullopt;
    }
};

/// Mapping cone: C^k = src^(k+1) (+) dst^k with differential
/// [[-d_src, 0], [f, d_dst]]. Rejects non-chain-maps.
inline ChainComplex cone(const ChainMap& f) {
    if (const auto bad = f.first_non_commuting_degree())
        throw invalid_complex_error("not a chain map: fails to commute at degree " +
                                    std::to_string(*bad));
    const Ring& ring = f.src.ring();
    if (f.src.is_empty() && f.dst.is_empty()) return ChainComplex(ring);
    int lo = INT32_MAX, hi = INT32_MIN;
    if (!f.src.is_empty()) {
        lo = std::min(lo, f.src.min_deg() - 1);
        hi = std::max(hi, f.src.max_deg() - 1);
    }
    if (!f.dst.is_empty()) {
        lo = std::min(lo, f.dst.min_deg());
        hi = std::max(hi, f.dst.max_deg());
    }
    const RElem minus_one = RElem::from_int(ring, -1);
    std::vector<int> ranks;
    std::vector<Matrix> diffs;
    for (int deg = lo; deg <= hi; ++deg) ranks.push_back(f.src.rank(deg + 1) + f.dst.rank(deg));
    for (int deg = lo; deg < hi; ++deg) {
        const Matrix a = f.src.differential(deg + 1).scaled(minus_one);
        const Matrix zero(ring, f.src.rank(deg + 2), f.dst.rank(deg));
        const Matrix b = f.component(deg + 1);
        const Matrix d = f.dst.differential(deg);
        diffs.push_back(Matrix::block2x2(a, zero, b, d));
    }
    return ChainComplex::build(ring, lo, std::move(ranks), std::move(diffs)).trimmed();
}

} // namespace perplex
