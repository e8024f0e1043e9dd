#include <doctest.h>

#include "torusbundle/cohomology.hpp"
#include "torusbundle/report.hpp"
#include "torusbundle/verification.hpp"

using namespace torusbundle;

namespace {

std::vector<Int> factors(const Cohomology& h, int degree) {
    return h.degree(degree).group().invariant_factors;
}

Cohomology compute(const GluingMatrix& theta, CoefficientRing ring) {
    return Cohomology::compute(Resolution::build(theta), ring);
}

}  // namespace

TEST_CASE("dual matrices take the documented form") {
    for (const auto& theta : sample_gluing_matrices(5, 25)) {
        Resolution res = Resolution::build(theta);
        DualMatrices dm = dual_matrices(res, CoefficientRing::integers());
        CHECK(dm.d1_dual.is_zero());
        CHECK(dm.d2_dual == IntMatrix{{1 + theta.m1(), theta.n1(), 0},
                                      {theta.m2(), 1 + theta.n2(), 0},
                                      {0, 0, 0}});
        CHECK(dm.d3_dual == IntMatrix{{0, 0, -1 + theta.det()}});
    }
    // det = 1 zeroes the top dual map.
    Resolution res = Resolution::build(GluingMatrix(2, 1, 1, 1));
    CHECK(dual_matrices(res, CoefficientRing::integers()).d3_dual.is_zero());
}

TEST_CASE("integral cohomology of landmark matrices") {
    Cohomology id = compute(GluingMatrix(1, 0, 0, 1), CoefficientRing::integers());
    CHECK(factors(id, 0) == std::vector<Int>{0});
    CHECK(factors(id, 1) == std::vector<Int>{0, 0, 0});
    CHECK(factors(id, 2) == std::vector<Int>{0, 0, 0});
    CHECK(factors(id, 3) == std::vector<Int>{0});

    Cohomology anosov = compute(GluingMatrix(2, 1, 1, 1), CoefficientRing::integers());
    CHECK(factors(anosov, 0) == std::vector<Int>{0});
    CHECK(factors(anosov, 1) == std::vector<Int>{0});
    CHECK(factors(anosov, 2) == std::vector<Int>{0});
    CHECK(factors(anosov, 3) == std::vector<Int>{0});

    Cohomology swap = compute(GluingMatrix(0, 1, 1, 0), CoefficientRing::integers());
    CHECK(factors(swap, 0) == std::vector<Int>{0});
    CHECK(factors(swap, 1) == std::vector<Int>{0, 0});
    CHECK(factors(swap, 2) == std::vector<Int>{0});
    CHECK(factors(swap, 3) == std::vector<Int>{2});
}

TEST_CASE("generators are cocycles of exact order") {
    for (const auto& theta : sample_gluing_matrices(17, 40)) {
        for (CoefficientRing ring :
             {CoefficientRing::integers(), CoefficientRing::mod(2), CoefficientRing::mod(5)}) {
            Cohomology h = compute(theta, ring);
            for (int k = 0; k < 4; ++k) {
                const auto& g = h.degree(k).group();
                REQUIRE(g.generators.size() == g.invariant_factors.size());
                for (std::size_t i = 0; i < g.generators.size(); ++i) {
                    CHECK(h.degree(k).is_cocycle(g.generators[i].coords));
                    Int f = g.invariant_factors[i];
                    CHECK(h.degree(k).class_order(g.generators[i].coords) == (f == 0 ? 0 : f));
                }
            }
        }
    }
}

TEST_CASE("degree one generators follow the documented recipe") {
    // rank 1, nonzero first row: -n1/g y1* + (1+m1)/g y2*, then y3*.
    GluingMatrix t(1, 0, 1, 1);
    CHECK(t.rank_minus_identity() == 1);
    Cohomology h = compute(t, CoefficientRing::integers());
    const auto& g = h.degree(1).group();
    REQUIRE(g.generators.size() == 2);
    Int g1 = gcd(1 + t.m1(), t.n1());
    CHECK(g.generators[0].coords ==
          std::vector<Int>{-t.n1() / g1, (1 + t.m1()) / g1, 0});
    CHECK(g.generators[1].coords == std::vector<Int>{0, 0, 1});

    // Symmetric sub-case (1 + m1) = n1 = 0 uses the other two entries.
    GluingMatrix sym(1, 2, 0, -1);
    CHECK(1 + sym.m1() == 0);
    CHECK(sym.n1() == 0);
    Cohomology hs = compute(sym, CoefficientRing::integers());
    const auto& gs = hs.degree(1).group();
    REQUIRE(gs.generators.size() == 2);
    Int g2 = gcd(sym.m2(), 1 + sym.n2());
    CHECK(gs.generators[0].coords ==
          std::vector<Int>{(1 + sym.n2()) / g2, -sym.m2() / g2, 0});
}

TEST_CASE("modular cohomology dimensions") {
    GluingMatrix swap(0, 1, 1, 0);
    Cohomology h2 = compute(swap, CoefficientRing::mod(2));
    CHECK(factors(h2, 0) == std::vector<Int>{2});
    CHECK(factors(h2, 1) == std::vector<Int>{2, 2});
    CHECK(factors(h2, 2) == std::vector<Int>{2, 2});
    CHECK(factors(h2, 3) == std::vector<Int>{2});

    Cohomology h3 = compute(swap, CoefficientRing::mod(3));
    CHECK(factors(h3, 1) == std::vector<Int>{3, 3});
    CHECK(factors(h3, 2) == std::vector<Int>{3});
    CHECK(factors(h3, 3).empty());
}

TEST_CASE("case formulas match the elimination on samples") {
    for (const auto& theta : sample_gluing_matrices(29, 80)) {
        for (CoefficientRing ring :
             {CoefficientRing::integers(), CoefficientRing::mod(2), CoefficientRing::mod(3),
              CoefficientRing::mod(7)}) {
            Cohomology h = compute(theta, ring);
            auto expected = expected_invariant_factors(theta, ring);
            for (int k = 0; k < 4; ++k) CHECK(factors(h, k) == expected[k]);
        }
    }
}

TEST_CASE("classification data") {
    DerivationData d1 = derive_presentation_data(GluingMatrix(1, 0, 0, 1));
    CHECK(d1.case_index == 1);
    CHECK(!d1.rank1.has_value());

    DerivationData d2 = derive_presentation_data(GluingMatrix(1, 0, 1, 1));
    CHECK(d2.case_index == 2);
    REQUIRE(d2.rank1.has_value());
    CHECK(gcd(d2.rank1->p, d2.rank1->q) == 1);
    CHECK(d2.rank1->p * d2.rank1->k + d2.rank1->q * d2.rank1->ell == 1);

    DerivationData d4 = derive_presentation_data(GluingMatrix(1, 2, 0, -1));
    CHECK(d4.case_index == 4);
    REQUIRE(d4.rank1->m.has_value());
    CHECK(*d4.rank1->m % 2 == 0);

    DerivationData d3 = derive_presentation_data(GluingMatrix(0, 1, 1, 0));
    CHECK(d3.case_index == 3);
    CHECK(*d3.rank1->m % 2 != 0);

    CHECK(derive_presentation_data(GluingMatrix(2, 1, 1, 1)).case_index == 5);
    CHECK(derive_presentation_data(GluingMatrix(2, 1, 1, 0)).case_index == 6);

    // Factorization identity on random rank-1 matrices.
    for (const auto& theta : sample_gluing_matrices(41, 200)) {
        if (theta.rank_minus_identity() != 1) continue;
        DerivationData d = derive_presentation_data(theta);
        REQUIRE(d.rank1.has_value());
        const Rank1Data& r = *d.rank1;
        CHECK(1 + theta.m1() == r.q * r.r_prime);
        CHECK(theta.m2() == r.p * r.r_prime);
        CHECK(theta.n1() == r.q * r.s_prime);
        CHECK(1 + theta.n2() == r.p * r.s_prime);
        CHECK(r.p * r.k + r.q * r.ell == 1);
    }
}

TEST_CASE("coefficient ring parsing") {
    CHECK(CoefficientRing::parse("Z") == CoefficientRing::integers());
    CHECK(CoefficientRing::parse("Z2") == CoefficientRing::mod(2));
    CHECK(CoefficientRing::parse("Z11") == CoefficientRing::mod(11));
    CHECK(CoefficientRing::parse("Zp", 7) == CoefficientRing::mod(7));
    CHECK_THROWS_AS(CoefficientRing::parse("Z4"), InvalidPrimeError);
    CHECK_THROWS_AS(CoefficientRing::parse("Zp"), InvalidPrimeError);
    CHECK_THROWS_AS(CoefficientRing::parse("Q"), InvalidPrimeError);
}
