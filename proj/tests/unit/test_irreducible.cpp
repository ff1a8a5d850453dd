#include <catch2/catch_amalgamated.hpp>

#include "perplex/irreducible.hpp"
#include "test_support.hpp"

using namespace perplex;
using namespace testsupport;

TEST_CASE("F-family certificates carry the proof's valuation structure") {
    const Ring r = qloc(2);
    for (int n = 1; n <= 10; ++n) {
        const ChainComplex f = f_n(r, n);
        const IrreducibilityCertificate cert = find_certificate(f);
        INFO("n=" << n);
        REQUIRE(cert.certified);
        CHECK(cert.top_degree == 0);
        REQUIRE(static_cast<int>(cert.differentials.size()) == n);
        for (const auto& d : cert.differentials) {
            CHECK(d.s == (d.degree == -1 ? 1 : 2));
            CHECK(d.injectivity_rank == d.cols);
            CHECK(d.cols == 2);
        }
        CHECK(verify_certificate(f, cert));
    }
}

TEST_CASE("Koszul complexes certify with s = 1 everywhere") {
    for (int n = 2; n <= 5; ++n) {
        const ChainComplex k = koszul(qloc(n));
        const IrreducibilityCertificate cert = find_certificate(k);
        INFO("n=" << n);
        REQUIRE(cert.certified);
        for (const auto& d : cert.differentials) CHECK(d.s == 1);
        CHECK(verify_certificate(k, cert));
    }
}

TEST_CASE("iterated and multi-iterated complexes certify") {
    for (int n = 2; n <= 4; ++n) {
        const Ring r = qloc(n);
        for (int m = 1; m <= 4; ++m) {
            const ChainComplex c = multi_iterated_koszul(r, m);
            const IrreducibilityCertificate cert = find_certificate(c);
            INFO("n=" << n << " m=" << m);
            REQUIRE(cert.certified);
            CHECK(verify_certificate(c, cert));
        }
    }
}

TEST_CASE("a decomposable complex is refused at condition (a)") {
    const Ring r = qloc(2);
    const ChainComplex sum = direct_sum(f_n(r, 2), f_n(r, 2));
    const IrreducibilityCertificate cert = find_certificate(sum);
    CHECK_FALSE(cert.certified);
    CHECK(cert.refused_degree == 0);
    CHECK(cert.refusal_reason.find("rank 2") != std::string::npos);
}

TEST_CASE("tampered depth values fail verification") {
    const Ring r = qloc(2);
    const ChainComplex f = f_n(r, 3);
    IrreducibilityCertificate cert = find_certificate(f);
    REQUIRE(cert.certified);
    for (auto& d : cert.differentials)
        if (d.degree == -1) d.s += 1; // [x, y] has valuation-1 entries only
    CHECK_FALSE(verify_certificate(f, cert));
}

TEST_CASE("zero differentials refuse certification") {
    const Ring r = qloc(2);
    const ChainComplex c = ChainComplex::build(r, -1, {1, 1}, {Matrix(r, 1, 1)});
    REQUIRE(validate(c).ok);
    const IrreducibilityCertificate cert = find_certificate(c);
    CHECK_FALSE(cert.certified);
    CHECK(cert.refused_degree == -1);
    CHECK(cert.refusal_reason.find("zero differential") != std::string::npos);
}

TEST_CASE("certificates survive residue-level conjugation") {
    const Ring r = qloc(2);
    ScrambleConfig cfg;
    cfg.constants_only = true;
    SplitMix64 rng(4242);
    for (const ChainComplex& base : {f_n(r, 4), koszul(r), iterated_koszul(r)}) {
        const IrreducibilityCertificate original = find_certificate(base);
        REQUIRE(original.certified);
        for (int t = 0; t < 5; ++t) {
            const ChainComplex scrambled = scramble_complex(base, rng.next(), cfg);
            REQUIRE(validate(scrambled).ok);
            const IrreducibilityCertificate cert = find_certificate(scrambled);
            REQUIRE(cert.certified);
            REQUIRE(cert.differentials.size() == original.differentials.size());
            for (std::size_t i = 0; i < cert.differentials.size(); ++i)
                CHECK(cert.differentials[i].s == original.differentials[i].s);
            CHECK(verify_certificate(scrambled, cert));
        }
    }
}

TEST_CASE("certified complexes are already minimal") {
    for (const ChainComplex& c : {f_n(qloc(2), 6), koszul(qloc(3)), multi_iterated_koszul(qloc(3), 2)}) {
        const IrreducibilityCertificate cert = find_certificate(c);
        REQUIRE(cert.certified);
        CHECK(is_minimal(c));
        CHECK(minimize(c).complex == c);
    }
}

TEST_CASE("certificate preconditions and shape checks") {
    CHECK_THROWS_AS(find_certificate(ChainComplex(qloc(2))), error);
    CHECK_THROWS_AS(find_certificate(ChainComplex::build(zz(), 0, {1}, {})), unsupported_ring_error);

    const Ring r = qloc(2);
    const IrreducibilityCertificate cert2 = find_certificate(f_n(r, 2));
    CHECK_THROWS_AS(verify_certificate(f_n(r, 3), cert2), shape_mismatch_error);
    CHECK_THROWS_AS(verify_certificate(koszul(qloc(3)), cert2), shape_mismatch_error);
}

TEST_CASE("refused certificates never verify") {
    const Ring r = qloc(2);
    const ChainComplex sum = direct_sum(f_n(r, 2), f_n(r, 2));
    const IrreducibilityCertificate refused = find_certificate(sum);
    CHECK_FALSE(verify_certificate(sum, refused));
}
