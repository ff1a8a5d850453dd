#pragma once

#include <utility>
#include <vector>

#include "perplex/rings.hpp"

namespace perplex {

/// Dense matrix over one of the supported rings. Carries its ring so that
/// 0 x n and n x 0 shapes stay well-typed; all mutating operations keep
/// entries canonical because RElem arithmetic does.
class Matrix {
public:
    Matrix() : ring_(Ring::integers()), rows_(0), cols_(0) {}

    Matrix(const Ring& ring, int rows, int cols)
        : ring_(ring), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                RElem::zero(ring)) {
        if (rows < 0 || cols < 0) throw shape_mismatch_error("negative matrix dimension");
    }

    static Matrix identity(const Ring& ring, int n) {
        Matrix m(ring, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = RElem::one(ring);
        return m;
    }

    static Matrix from_rows(const Ring& ring, const std::vector<std::vector<RElem>>& rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        Matrix m(ring, r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
                throw shape_mismatch_error("ragged rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    RElem& at(int r, int c) {
        range_check(r, c);
        return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
    }
    const RElem& at(int r, int c) const {
        range_check(r, c);
        return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
    }

    bool is_zero() const {
        for (const RElem& e : data_)
            if (!e.is_zero()) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (ring_ != o.ring_) throw ring_mismatch_error("matrix product over different rings");
        if (cols_ != o.rows_) throw shape_mismatch_error("matrix product shape mismatch");
        Matrix out(ring_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const RElem& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const RElem& b = o.at(k, j);
                    if (b.is_zero()) continue;
                    out.at(i, j) = out.at(i, j) + a * b;
                }
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        same_shape(o);
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = out.data_[i] + o.data_[i];
        return out;
    }

    Matrix operator-() const {
        Matrix out = *this;
        for (RElem& e : out.data_) e = -e;
        return out;
    }

    Matrix operator-(const Matrix& o) const { return *this + (-o); }

    Matrix scaled(const RElem& c) const {
        Matrix out = *this;
        for (RElem& e : out.data_) e = e * c;
        return out;
    }

    bool operator==(const Matrix& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    // ---- elementary operations (all invertible over the ring) ----

    void row_swap(int i, int j) {
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void col_swap(int i, int j) {
        for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }
    void row_scale(int i, const RElem& u) {
        for (int c = 0; c < cols_; ++c) at(i, c) = at(i, c) * u;
    }
    void col_scale(int j, const RElem& u) {
        for (int r = 0; r < rows_; ++r) at(r, j) = at(r, j) * u;
    }
    /// row_dst += a * row_src
    void row_axpy(int dst, int src, const RElem& a) {
        for (int c = 0; c < cols_; ++c) at(dst, c) = at(dst, c) + a * at(src, c);
    }
    /// col_dst += a * col_src
    void col_axpy(int dst, int src, const RElem& a) {
        for (int r = 0; r < rows_; ++r) at(r, dst) = at(r, dst) + a * at(r, src);
    }

    Matrix without_row(int r) const {
        Matrix out(ring_, rows_ - 1, cols_);
        for (int i = 0, oi = 0; i < rows_; ++i) {
            if (i == r) continue;
            for (int j = 0; j < cols_; ++j) out.at(oi, j) = at(i, j);
            ++oi;
        }
        return out;
    }

    Matrix without_col(int c) const {
        Matrix out(ring_, rows_, cols_ - 1);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0, oj = 0; j < cols_; ++j) {
                if (j == c) continue;
                out.at(i, oj++) = at(i, j);
            }
        return out;
    }

    /// 2x2 block assembly; empty blocks contribute their shape only.
    static Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
        const Ring& ring = a.ring();
        if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
            throw shape_mismatch_error("block shapes do not agree");
        Matrix out(ring, a.rows() + c.rows(), a.cols() + b.cols());
        const auto put = [&](const Matrix& m, int r0, int c0) {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) out.at(r0 + i, c0 + j) = m.at(i, j);
        };
        put(a, 0, 0);
        put(b, 0, a.cols());
        put(c, a.rows(), 0);
        put(d, a.rows(), a.cols());
        return out;
    }

    static Matrix block_diag(const Matrix& a, const Matrix& b) {
        return block2x2(a, Matrix(a.ring(), a.rows(), b.cols()),
                        Matrix(a.ring(), b.rows(), a.cols()), b);
    }

    std::string str() const {
        std::string out = "[";
        for (int i = 0; i < rows_; ++i) {
            out += i == 0 ? "[" : " [";
            for (int j = 0; j < cols_; ++j) {
                out += at(i, j).str();
                if (j + 1 < cols_) out += ", ";
            }
            out += "]";
            if (i + 1 < rows_) out += "\n";
        }
        return out + "]";
    }

private:
    void range_check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw shape_mismatch_error("matrix index out of range");
    }
    void same_shape(const Matrix& o) const {
        if (ring_ != o.ring_) throw ring_mismatch_error("matrices over different rings");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw shape_mismatch_error("matrix shapes differ");
    }

    Ring ring_;
    int rows_, cols_;
    std::vector<RElem> data_;
};

/// Fraction-free (Bareiss) determinant; every division is exact over an
/// integral domain, which all supported rings are.
inline RElem determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw shape_mismatch_error("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return RElem::one(m.ring());
    Matrix a = m;
    RElem prev = RElem::one(m.ring());
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k).is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a.at(i, k).is_zero()) { swap = i; break; }
            if (swap < 0) return RElem::zero(m.ring());
            a.row_swap(k, swap);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                RElem v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = v.exact_div(prev);
            }
        prev = a.at(k, k);
    }
    RElem det = a.at(n - 1, n - 1);
    return negate ? -det : det;
}

} // namespace perplex
