#include <catch2/catch_amalgamated.hpp>

#include "perplex/snf.hpp"
#include "test_support.hpp"

using namespace perplex;
using namespace testsupport;

namespace {

void check_smith_contract(const Matrix& m) {
    const SmithResult s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(determinant(s.u).is_unit());
    CHECK(determinant(s.v).is_unit());
    // diagonal, canonical, divisibility chain
    for (int i = 0; i < s.d.rows(); ++i)
        for (int j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j).is_zero());
    const auto diag = smith_diagonal(m);
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) CHECK(diag[i + 1].divisible_by(diag[i]));
    for (const RElem& e : diag) CHECK(e * e.canonical_unit() == e);
    // zero diagonal entries only after all nonzero ones
    bool seen_zero = false;
    for (int t = 0; t < std::min(s.d.rows(), s.d.cols()); ++t) {
        if (s.d.at(t, t).is_zero()) seen_zero = true;
        else CHECK_FALSE(seen_zero);
    }
}

} // namespace

TEST_CASE("smith normal form of diag(2,3) over the integers") {
    Matrix m(zz(), 2, 2);
    m.at(0, 0) = RElem::from_int(zz(), 2);
    m.at(1, 1) = RElem::from_int(zz(), 3);
    const SmithResult s = smith_normal_form(m);
    CHECK(s.d.at(0, 0) == RElem::from_int(zz(), 1));
    CHECK(s.d.at(1, 1) == RElem::from_int(zz(), 6));
    check_smith_contract(m);
}

TEST_CASE("smith normal form keeps a divisibility-ordered diagonal fixed") {
    const Ring r = qx();
    Matrix m(r, 2, 2);
    m.at(0, 0) = x(r);
    m.at(1, 1) = x(r) * x(r);
    const SmithResult s = smith_normal_form(m);
    CHECK(s.d.at(0, 0) == x(r));
    CHECK(s.d.at(1, 1) == x(r) * x(r));
}

TEST_CASE("smith normal form of a zero matrix") {
    const Matrix m(zz(), 2, 3);
    const SmithResult s = smith_normal_form(m);
    CHECK(s.d == m);
    CHECK(s.u == Matrix::identity(zz(), 2));
    CHECK(s.v == Matrix::identity(zz(), 3));
}

TEST_CASE("smith normal form contract on random matrices") {
    for (const Ring& ring : {zz(), qx(), gfx(5), zloc(3), gf(7), q()}) {
        SplitMix64 rng(31 + static_cast<std::uint64_t>(ring.kind()));
        for (int t = 0; t < 25; ++t) {
            const int rows = static_cast<int>(rng.in_range(0, 5));
            const int cols = static_cast<int>(rng.in_range(0, 4));
            check_smith_contract(random_matrix(ring, rows, cols, rng));
        }
    }
}

TEST_CASE("smith normal form refuses non-PIDs") {
    CHECK_THROWS_AS(smith_normal_form(Matrix(qloc(2), 1, 1)), unsupported_ring_error);
    CHECK_THROWS_AS(smith_normal_form(Matrix(qloc(1), 1, 1)), unsupported_ring_error);
}

TEST_CASE("rank over fields") {
    const Ring f = gf(5);
    Matrix m(f, 2, 3);
    m.at(0, 0) = RElem::from_int(f, 1);
    m.at(0, 1) = RElem::from_int(f, 2);
    m.at(1, 0) = RElem::from_int(f, 2);
    m.at(1, 1) = RElem::from_int(f, 4); // row 2 = 2 * row 1
    CHECK(rank(m) == 1);
    CHECK(rank(Matrix::identity(f, 4)) == 4);
    CHECK(rank(Matrix(f, 3, 0)) == 0);
}

TEST_CASE("determinant and elementary operations") {
    const Ring r = zz();
    Matrix m = Matrix::identity(r, 3);
    m.row_axpy(0, 2, RElem::from_int(r, 5));
    m.col_swap(1, 2);
    m.row_scale(1, RElem::from_int(r, -1));
    CHECK(determinant(m).is_unit());
    Matrix sq(r, 2, 2);
    sq.at(0, 0) = RElem::from_int(r, 2);
    sq.at(0, 1) = RElem::from_int(r, 3);
    sq.at(1, 0) = RElem::from_int(r, 4);
    sq.at(1, 1) = RElem::from_int(r, 5);
    CHECK(determinant(sq) == RElem::from_int(r, -2));
}
