#include <doctest.h>

#include "torusbundle/resolution.hpp"
#include "torusbundle/verification.hpp"

using namespace torusbundle;

namespace {

GroupRingElement term(Int m, Int n, Int k, Int c = 1) {
    return GroupRingElement::term({m, n, k}, c);
}

const GroupRingElement one = GroupRingElement::one();

// Eq-style check on the first middle-differential row: the two coefficient
// elements must satisfy
//   A (a - 1) + B (b - 1) = t - 1 + a - a t.
bool first_row_identity(const GluingMatrix& theta, const AbcdElements& abcd) {
    GroupRingElement lhs = ring_mul(theta, abcd.A, term(1, 0, 0) - one) +
                           ring_mul(theta, abcd.B, term(0, 1, 0) - one);
    GroupRingElement rhs = term(0, 0, 1) - one + term(1, 0, 0) - term(1, 0, 1);
    return lhs == rhs;
}

}  // namespace

TEST_CASE("coefficient elements for the trivial action") {
    GluingMatrix id(1, 0, 0, 1);
    AbcdElements abcd = build_abcd(id);
    CHECK(abcd.A == one - term(0, 0, 1));
    CHECK(abcd.B.is_zero());
    CHECK(abcd.C.is_zero());
    CHECK(abcd.D == one - term(0, 0, 1));
    CHECK(first_row_identity(id, abcd));
}

TEST_CASE("coefficient element edge cases") {
    // m1 = 0 forces A = 1; n1 = 0 forces B = 0.
    GluingMatrix t(5, -1, -1, 0);  // delta = 0 so m1 = 0
    CHECK(t.m1() == 0);
    CHECK(build_abcd(t).A == one);

    GluingMatrix t2(1, 2, 0, 1);  // beta = 0 so n1 = 0
    CHECK(t2.n1() == 0);
    CHECK(build_abcd(t2).B.is_zero());

    // Augmentations follow the ledger for assorted matrices.
    for (const auto& theta : sample_gluing_matrices(11, 40)) {
        AbcdElements abcd = build_abcd(theta);
        CHECK(augmentation(abcd.A) == 1 + theta.m1());
        CHECK(augmentation(abcd.B) == theta.n1());
        CHECK(augmentation(abcd.C) == theta.m2());
        CHECK(augmentation(abcd.D) == 1 + theta.n2());
        CHECK(first_row_identity(theta, abcd));
    }
}

TEST_CASE("index set lookup") {
    // (m1, n1, m2, n2) = (0, 1, 1, *) selects the first value row.
    GluingMatrix t(5, -1, -1, 0);
    CHECK(t.m1() == 0);
    CHECK(t.n1() == 1);
    CHECK(t.m2() == 1);
    IndexSetLookup lookup = lookup_index_sets(t);
    CHECK(lookup.sets.I1.is_empty());
    CHECK(lookup.sets.J1.is_empty());
    CHECK(lookup.sets.I2 == Interval::single(-1));
    CHECK(lookup.sets.J2 == Interval::single(-1));

    // The trivial action selects the row with I1 = {-m2} = {0}, J1 = {0}.
    GluingMatrix id(1, 0, 0, 1);
    IndexSetLookup idlook = lookup_index_sets(id);
    CHECK(idlook.sets.I1 == Interval::single(0));
    CHECK(idlook.sets.J1 == Interval::single(0));
    CHECK(idlook.sets.I2.is_empty());

    // All-positive quadruple with m1 < m2 and n1 < n2: the first sign row.
    GluingMatrix pos(-3, 2, 1, -1);  // (m1, n1, m2, n2) = (1, 1, 2, 3)
    CHECK(pos.m1() == 1);
    CHECK(pos.n1() == 1);
    CHECK(pos.m2() == 2);
    CHECK(pos.n2() == 3);
    IndexSetLookup poslook = lookup_index_sets(pos);
    CHECK(poslook.row == 1);
    CHECK(poslook.sets.I1 == Interval{-3, -3});
    CHECK(poslook.sets.J1 == Interval{-3, -2});
    CHECK(poslook.sets.I2 == Interval{-2, -2});
    CHECK(poslook.sets.J2 == Interval{-1, -1});
    CHECK(poslook.sets.cardinality_difference() == pos.det());
}

TEST_CASE("ties fall outside the table") {
    // (m1, n1, m2, n2) = (1, 1, 1, 2): all positive with m1 = m2.
    GluingMatrix tie(-2, 1, 1, -1);
    CHECK(tie.m1() == 1);
    CHECK(tie.n1() == 1);
    CHECK(tie.m2() == 1);
    CHECK(tie.n2() == 2);
    CHECK_THROWS_AS(lookup_index_sets(tie), NoMatchingRowError);

    BuildEResult r = build_e(tie);
    CHECK(r.used_lattice_fallback);
    CHECK(satisfies_e_identity(tie, r.e));
}

TEST_CASE("top coefficient element") {
    GluingMatrix id(1, 0, 0, 1);
    GroupRingElement e = build_e(id).e;
    CHECK(e == -one + term(0, 0, 1));
    CHECK(satisfies_e_identity(id, e));
    CHECK(solve_e_lattice(id) == e);

    for (const auto& theta : sample_gluing_matrices(23, 60)) {
        GroupRingElement et = build_e(theta).e;
        GroupRingElement el = solve_e_lattice(theta);
        CHECK(satisfies_e_identity(theta, et));
        CHECK(satisfies_e_identity(theta, el));
        CHECK(augmentation(et) == -1 + theta.det());
        CHECK(augmentation(el) == -1 + theta.det());
    }
}

TEST_CASE("resolution chain identities") {
    for (const auto& theta : sample_gluing_matrices(31, 60)) {
        Resolution res = Resolution::build(theta);  // throws on any violation
        CHECK(res.d3()[2] == res.E());
        CHECK(res.d1()[0] == term(1, 0, 0) - one);
        CHECK(res.d1()[1] == term(0, 1, 0) - one);
        CHECK(res.d1()[2] == term(0, 0, 1) - one);
    }
    // The trivial action collapses the first middle row to two entries.
    Resolution res = Resolution::build(GluingMatrix(1, 0, 0, 1));
    CHECK(res.d2()[0][0] == one - term(0, 0, 1));
    CHECK(res.d2()[0][1].is_zero());
    CHECK(res.d2()[0][2] == term(1, 0, 0) - one);
}

TEST_CASE("every table row is reachable") {
    int rows_hit = 0;
    std::vector<bool> seen(index_table_row_count() + 1, false);
    for (const auto& entry : table_coverage_corpus()) {
        IndexSetLookup lookup = lookup_index_sets(entry.theta);
        CHECK(lookup.row == entry.expected_row);
        CHECK(satisfies_e_identity(entry.theta, assemble_e(entry.theta, lookup.sets)));
        if (!seen[lookup.row]) {
            seen[lookup.row] = true;
            ++rows_hit;
        }
    }
    CHECK(rows_hit == index_table_row_count());
    CHECK(rows_hit == 28);
}

TEST_CASE("larger entries stress the table and the solver") {
    for (const auto& theta : sample_gluing_matrices(53, 25, 25)) {
        BuildEResult r = build_e(theta);
        CHECK(satisfies_e_identity(theta, r.e));
        CHECK(solve_e_lattice(theta) == r.e);
        Resolution res = Resolution::build(theta);
        CHECK(augmentation(res.E()) == -1 + theta.det());
    }
}
