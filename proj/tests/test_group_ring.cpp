#include <doctest.h>

#include "torusbundle/group_ring.hpp"

using namespace torusbundle;

namespace {

GroupRingElement term(Int m, Int n, Int k, Int c = 1) {
    return GroupRingElement::term({m, n, k}, c);
}

}  // namespace

TEST_CASE("power application") {
    GluingMatrix any(3, 2, 1, 1);
    CHECK(any.power_apply(0, {5, -2}) == std::pair<Int, Int>{5, -2});

    GluingMatrix shear(1, 1, 0, 1);
    CHECK(shear.power_apply(1, {1, 0}) == std::pair<Int, Int>{1, 0});

    // Inverse through the adjugate, checked by applying theta again.
    GluingMatrix t(2, 1, 1, 1);
    auto v = t.power_apply(-1, {1, 0});
    CHECK(v == std::pair<Int, Int>{1, -1});
    CHECK(t.power_apply(1, v) == std::pair<Int, Int>{1, 0});

    // theta^k theta^-k = identity on a sample vector.
    for (Int k : {-3, -1, 2, 5}) {
        auto w = t.power_apply(-k, t.power_apply(k, {2, -7}));
        CHECK(w == std::pair<Int, Int>{2, -7});
    }
}

TEST_CASE("matrix validation") {
    CHECK_THROWS_AS(GluingMatrix(1, 2, 3, 4), InvalidMatrixError);
    CHECK_THROWS_AS(GluingMatrix(0, 0, 0, 0), InvalidMatrixError);
    GluingMatrix t(2, 1, 1, 1);
    CHECK(t.det() == 1);
    CHECK(t.m1() == -1);
    CHECK(t.n1() == 1);
    CHECK(t.m2() == 1);
    CHECK(t.n2() == -2);
}

TEST_CASE("semidirect multiplication") {
    GluingMatrix shear(1, 1, 0, 1);
    // Fiber elements commute at level zero.
    CHECK(mul_elements(shear, {1, 0, 0}, {0, 1, 0}) == GroupElement{1, 1, 0});
    // Conjugating a by t gives a^alpha b^beta.
    GluingMatrix t(3, 2, 1, 1);
    CHECK(mul_elements(t, {0, 0, 1}, {1, 0, 0}) == GroupElement{3, 1, 1});
    // (a, t) * (b, t^-1) twists b by theta.
    CHECK(mul_elements(shear, {1, 0, 1}, {0, 1, -1}) == GroupElement{2, 1, 0});
}

TEST_CASE("ring multiplication") {
    GluingMatrix id(1, 0, 0, 1);
    GroupRingElement x = term(1, 2, 0) - term(0, 0, 1, 3);
    CHECK(ring_mul(id, x, GroupRingElement::zero()).is_zero());
    CHECK(ring_mul(id, x, GroupRingElement::one()) == x);

    // Level-zero elements commute, so this bracket cancels.
    GroupRingElement a = term(1, 0, 0), b = term(0, 1, 0), one = GroupRingElement::one();
    GroupRingElement lhs =
        ring_mul(id, one - b, a - one) + ring_mul(id, a - one, b - one);
    CHECK(lhs.is_zero());

    // (t - 1)(1 - b) expanded under the trivial action.
    GroupRingElement t = term(0, 0, 1);
    GroupRingElement product = ring_mul(id, t - one, one - b);
    GroupRingElement expected =
        -one + b + t - term(0, 1, 1);
    CHECK(product == expected);
}

TEST_CASE("augmentation") {
    CHECK(augmentation(term(4, -7, 3)) == 1);
    CHECK(augmentation(GroupRingElement::zero()) == 0);
    CHECK(augmentation(term(1, 0, 0, 5) - term(0, 0, 2, 3)) == 2);
}

TEST_CASE("fox power") {
    CHECK(fox_power(0, Axis::A).is_zero());
    CHECK(fox_power(3, Axis::A) == GroupRingElement::one() + term(1, 0, 0) + term(2, 0, 0));
    CHECK(fox_power(-2, Axis::B) == -(term(0, -1, 0) + term(0, -2, 0)));

    // Telescoping identity across the documented exponent range.
    GluingMatrix t(2, 1, 1, 1);
    for (Int e = -20; e <= 20; ++e) {
        GroupRingElement da = fox_power(e, Axis::A);
        CHECK(ring_mul(t, da, term(1, 0, 0) - GroupRingElement::one()) ==
              term(e, 0, 0) - GroupRingElement::one());
        CHECK(augmentation(da) == e);
        GroupRingElement db = fox_power(e, Axis::B);
        CHECK(ring_mul(t, db, term(0, 1, 0) - GroupRingElement::one()) ==
              term(0, e, 0) - GroupRingElement::one());
    }
}

TEST_CASE("coefficient overflow raises") {
    GluingMatrix id(1, 0, 0, 1);
    GroupRingElement big = term(0, 0, 0, Int(1) << 62);
    CHECK_THROWS_AS(ring_mul(id, big, big.scaled(4)), OverflowError);
    CHECK_THROWS_AS(big.scaled(4), OverflowError);
}

TEST_CASE("canonical form") {
    GroupRingElement x;
    x.add_term({1, 1, 0}, 2);
    x.add_term({1, 1, 0}, -2);
    CHECK(x.is_zero());
    x.add_term({0, 0, 1}, 1);
    x.add_term({1, 1, 0}, 3);
    GroupRingElement y;
    y.add_term({1, 1, 0}, 3);
    y.add_term({0, 0, 1}, 1);
    CHECK(x == y);
}
