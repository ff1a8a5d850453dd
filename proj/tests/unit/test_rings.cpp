#include <catch2/catch_amalgamated.hpp>

#include "perplex/filtration.hpp"
#include "test_support.hpp"

using namespace perplex;
using namespace testsupport;

TEST_CASE("ring arithmetic matches the pinned examples") {
    CHECK(RElem::from_int(zz(), 2) + RElem::from_int(zz(), 3) == RElem::from_int(zz(), 5));

    const Ring r = qloc(2);
    const RElem one_plus_y = RElem::one(r) + y(r);
    const RElem frac = x(r).exact_div(one_plus_y); // x/(1+y)
    CHECK(frac * one_plus_y == x(r));

    const Ring f5 = gf(5);
    CHECK(RElem::from_int(f5, 3) * RElem::from_int(f5, 4) == RElem::from_int(f5, 2));
}

TEST_CASE("mixed-ring operands are rejected") {
    CHECK_THROWS_AS(RElem::from_int(zz(), 1) + RElem::from_int(gf(5), 1), ring_mismatch_error);
    CHECK_THROWS_AS(x(qloc(2)) * x(qloc(3)), ring_mismatch_error);
}

TEST_CASE("commutative ring axioms hold on random elements") {
    const std::vector<Ring> rings = {zz(), q(), gf(7), qx(), gfx(5), qloc(2), zloc(3)};
    for (const Ring& ring : rings) {
        SplitMix64 rng(0xabcULL + static_cast<std::uint64_t>(ring.kind()));
        for (int t = 0; t < 30; ++t) {
            const RElem a = random_element(ring, rng);
            const RElem b = random_element(ring, rng);
            const RElem c = random_element(ring, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == RElem::zero(ring));
            CHECK(a * RElem::one(ring) == a);
        }
    }
}

TEST_CASE("is_unit follows the localization") {
    const Ring r = qloc(2);
    CHECK((x(r) + RElem::one(r)).is_unit());
    CHECK_FALSE((x(r) * y(r)).is_unit());

    const Ring z3 = zloc(3);
    CHECK(RElem::of_rational(z3, Rat(2) / Rat(5)).is_unit());
    CHECK_FALSE(RElem::of_rational(z3, Rat(6) / Rat(5)).is_unit());

    CHECK(RElem::from_int(zz(), -1).is_unit());
    CHECK_FALSE(RElem::from_int(zz(), 2).is_unit());

    CHECK(RElem::from_int(qx(), 3).is_unit());
    CHECK_FALSE(x(qx()).is_unit());
}

TEST_CASE("invert_unit and the NotAUnit error") {
    CHECK(RElem::of_rational(q(), Rat(2) / Rat(3)).inv_unit() ==
          RElem::of_rational(q(), Rat(3) / Rat(2)));

    const Ring r1 = qloc(1);
    const RElem u = RElem::one(r1) + x(r1);
    const RElem inv = u.inv_unit();
    CHECK(inv * u == RElem::one(r1));
    CHECK(inv.num() == Poly::constant(1, Scalar::rational(Rat(1))));
    CHECK(inv.den() == u.num());

    CHECK_THROWS_AS(RElem::from_int(zz(), 2).inv_unit(), not_a_unit_error);
}

TEST_CASE("valuation in the localized rings") {
    const Ring r = qloc(2);
    const RElem a = x(r) * x(r) * y(r) + y(r) * y(r) * y(r) * y(r); // x^2 y + y^4
    CHECK(a.valuation() == Valuation::finite(3));
    CHECK(RElem::zero(r).valuation().is_infinite());

    const Ring z2 = zloc(2);
    CHECK(RElem::of_rational(z2, Rat(12) / Rat(5)).valuation() == Valuation::finite(2));

    CHECK_THROWS_AS(RElem::from_int(zz(), 4).valuation(), unsupported_ring_error);
    CHECK_THROWS_AS(RElem::from_int(q(), 4).valuation(), unsupported_ring_error);
}

TEST_CASE("valuation is additive and detects units") {
    for (const Ring& ring : {qloc(2), gfloc(5, 3), zloc(3)}) {
        SplitMix64 rng(77);
        for (int t = 0; t < 40; ++t) {
            const RElem a = random_element(ring, rng);
            const RElem b = random_element(ring, rng);
            if (!a.is_zero() && !b.is_zero())
                CHECK((a * b).valuation().value() == a.valuation().value() + b.valuation().value());
            if (!a.is_zero()) CHECK(a.is_unit() == (a.valuation().value() == 0));
        }
    }
}

TEST_CASE("maximal ideal filtration basis") {
    const MaximalIdealFiltration f22(qloc(2), 2);
    CHECK(f22.basis() == std::vector<Exps>{{2, 0}, {1, 1}, {0, 2}});
    const MaximalIdealFiltration f33(qloc(3), 3);
    CHECK(f33.dim() == 10); // C(3+3-1, 3-1)
    CHECK(f33.basis().front() == Exps{3, 0, 0});
    CHECK(f33.basis().back() == Exps{0, 0, 3});
    CHECK_THROWS_AS(MaximalIdealFiltration(zz(), 1), unsupported_ring_error);
}

TEST_CASE("leading forms in m^s / m^(s+1)") {
    const Ring r = qloc(2);
    const MaximalIdealFiltration filt(r, 2);
    const auto vec = [&](const RElem& a) { return leading_form(a, 2, filt); };
    const auto qv = [&](long long v) { return RElem::from_int(q(), v); };

    CHECK(vec(x(r) * y(r)) == std::vector<RElem>{qv(0), qv(1), qv(0)});
    CHECK(vec(-(x(r) * x(r))) == std::vector<RElem>{qv(-1), qv(0), qv(0)});
    CHECK(vec(x(r) * x(r) * x(r)) == std::vector<RElem>{qv(0), qv(0), qv(0)});
    CHECK_THROWS_AS(vec(x(r)), error); // valuation 1 < 2
}

TEST_CASE("leading form is additive at equal depth") {
    const Ring r = qloc(2);
    const MaximalIdealFiltration filt(r, 2);
    SplitMix64 rng(5);
    for (int t = 0; t < 30; ++t) {
        RElem a = random_element(r, rng) * x(r) * x(r); // valuation >= 2
        RElem b = random_element(r, rng) * y(r) * y(r);
        if (!(a + b).valuation().at_least(2)) continue;
        const auto va = leading_form(a, 2, filt);
        const auto vb = leading_form(b, 2, filt);
        const auto vsum = leading_form(a + b, 2, filt);
        for (std::size_t i = 0; i < vsum.size(); ++i) CHECK(vsum[i] == va[i] + vb[i]);
    }
}

TEST_CASE("localized fractions stay reduced and canonical") {
    const Ring r = qloc(2);
    const RElem one = RElem::one(r);
    const RElem u = one + y(r);
    // (x (1+y)) / (1+y) collapses to x
    const RElem a = RElem::of_frac(r, x(r).num() * u.num(), u.num());
    CHECK(a == x(r));
    CHECK(a.den() == RElem::one(r).num());
    // denominators are scaled to constant term 1
    const RElem b = RElem::of_frac(r, x(r).num(), Poly::constant(2, Scalar::rational(Rat(2))) + x(r).num());
    CHECK(b.den().constant_term().is_one());
    CHECK(b * (RElem::from_int(r, 2) + x(r)) == x(r));
    CHECK_THROWS_AS(RElem::of_frac(r, x(r).num(), x(r).num()), error); // den(0) = 0
}

TEST_CASE("ring descriptor grammar round-trips") {
    for (const std::string text :
         {"q", "int", "gf:5", "q[x]", "gf:5[x]", "q-local:2", "gf:3-local:2", "int-local:3"}) {
        const Ring r = Ring::parse(text);
        CHECK(r.str() == text);
        CHECK(Ring::parse(r.str()) == r);
    }
    CHECK_THROWS_AS(Ring::parse("gf:4"), error);       // 4 is not prime
    CHECK_THROWS_AS(Ring::parse("nonsense"), parse_error);
    CHECK_THROWS_AS(Ring::parse("q-local:0"), error);
}

TEST_CASE("ring classification predicates") {
    CHECK(q().is_field());
    CHECK(gf(5).is_field());
    CHECK_FALSE(zz().is_field());
    for (const Ring& r : {q(), gf(5), zz(), qx(), zloc(3)}) CHECK(r.is_pid());
    CHECK_FALSE(qloc(1).is_pid());
    CHECK_FALSE(qloc(2).is_pid());
    for (const Ring& r : {q(), gf(5), qloc(2), zloc(3)}) CHECK(r.is_local());
    CHECK_FALSE(zz().is_local());
    CHECK_FALSE(qx().is_local());
    CHECK(qloc(2).residue_field() == q());
    CHECK(gfloc(5, 2).residue_field() == gf(5));
    CHECK(zloc(3).residue_field() == gf(3));
}
