#pragma once

#include <map>
#include <optional>
#include <vector>

#include "perplex/complex.hpp"

namespace perplex {

/// A complex over a local ring is minimal when every differential entry
/// lies in the maximal ideal, i.e. is a non-unit.
inline bool is_minimal(const ChainComplex& c) {
    if (!c.ring().is_local())
        throw unsupported_ring_error("minimality is defined over local rings, got " + c.ring().str());
    if (c.is_empty()) return true;
    for (int deg = c.min_deg(); deg < c.max_deg(); ++deg) {
        const Matrix& m = c.diff_at(deg);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j).is_unit()) return false;
    }
    return true;
}

enum class PivotScan { row_major, column_major };

struct MinimizationStep {
    int degree;  // differential the pivot was found in
    int row, col;
    RElem pivot;
};

/// Audit trail of the split-off acyclic two-term summands.
struct MinimizationTranscript {
    std::map<int, int> initial_ranks;
    std::map<int, int> final_ranks;
    std::vector<MinimizationStep> steps;
};

struct MinimizationResult {
    ChainComplex complex;
    MinimizationTranscript transcript;
};

/// Split off acyclic two-term summands until no differential entry is a
/// unit. Each round scans for a unit pivot (lowest degree first, then in
/// the requested order within the matrix), clears its row and column with
/// elementary operations, and deletes the two basis elements it spans.
inline MinimizationResult minimize(const ChainComplex& c, PivotScan scan = PivotScan::row_major) {
    if (!c.ring().is_local())
        throw unsupported_ring_error("minimization is defined over local rings, got " + c.ring().str());
    const ValidationResult vr = validate(c);
    if (!vr.ok) throw invalid_complex_error(vr.message);

    MinimizationTranscript transcript;
    transcript.initial_ranks = c.rank_map();
    if (c.is_empty()) return {c, transcript};

    const Ring& ring = c.ring();
    const int min_deg = c.min_deg();
    std::vector<int> ranks = c.rank_vector();
    std::vector<Matrix> diffs;
    for (int deg = c.min_deg(); deg < c.max_deg(); ++deg) diffs.push_back(c.diff_at(deg));

    const auto find_pivot = [&](int& di, int& pr, int& pc) -> bool {
        for (di = 0; di < static_cast<int>(diffs.size()); ++di) {
            const Matrix& m = diffs[static_cast<std::size_t>(di)];
            if (scan == PivotScan::row_major) {
                for (int r = 0; r < m.rows(); ++r)
                    for (int col = 0; col < m.cols(); ++col)
                        if (m.at(r, col).is_unit()) { pr = r; pc = col; return true; }
            } else {
                for (int col = 0; col < m.cols(); ++col)
                    for (int r = 0; r < m.rows(); ++r)
                        if (m.at(r, col).is_unit()) { pr = r; pc = col; return true; }
            }
        }
        return false;
    };

    int di = 0, pr = 0, pc = 0;
    while (find_pivot(di, pr, pc)) {
        Matrix& m = diffs[static_cast<std::size_t>(di)];
        const RElem pivot = m.at(pr, pc);
        const RElem pinv = pivot.inv_unit();
        transcript.steps.push_back({min_deg + di, pr, pc, pivot});

        // clear column pc with row operations on m; the basis change of the
        // target module also rewrites the outgoing differential
        for (int i = 0; i < m.rows(); ++i) {
            if (i == pr || m.at(i, pc).is_zero()) continue;
            const RElem alpha = -(m.at(i, pc) * pinv);
            m.row_axpy(i, pr, alpha);
            if (di + 1 < static_cast<int>(diffs.size()))
                diffs[static_cast<std::size_t>(di) + 1].col_axpy(pr, i, -alpha);
        }
        // clear row pr with column operations; the basis change of the
        // source module rewrites the incoming differential
        for (int j = 0; j < m.cols(); ++j) {
            if (j == pc || m.at(pr, j).is_zero()) continue;
            const RElem beta = -(m.at(pr, j) * pinv);
            m.col_axpy(j, pc, beta);
            if (di > 0) diffs[static_cast<std::size_t>(di) - 1].row_axpy(pc, j, -beta);
        }

        // d.d = 0 forces the adjacent stripes to vanish, so deleting the
        // pivot pair is a direct-summand split
        m = m.without_row(pr).without_col(pc);
        if (di + 1 < static_cast<int>(diffs.size()))
            diffs[static_cast<std::size_t>(di) + 1] =
                diffs[static_cast<std::size_t>(di) + 1].without_col(pr);
        if (di > 0)
            diffs[static_cast<std::size_t>(di) - 1] =
                diffs[static_cast<std::size_t>(di) - 1].without_row(pc);
        ranks[static_cast<std::size_t>(di)] -= 1;
        ranks[static_cast<std::size_t>(di) + 1] -= 1;
    }

    ChainComplex out =
        ChainComplex::build(ring, min_deg, std::move(ranks), std::move(diffs)).trimmed();
    transcript.final_ranks = out.rank_map();
    return {std::move(out), std::move(transcript)};
}

/// Length of the minimal model: the paper's width at the closed point.
/// nullopt means the complex is acyclic ("empty").
inline std::optional<int> width(const ChainComplex& c) {
    return minimize(c).complex.length();
}

} // namespace perplex
