#include <doctest.h>

#include "astmesh/dyadic.hpp"

using astmesh::Dyadic;

TEST_CASE("normalization keeps numerators odd") {
    const Dyadic half = Dyadic::from_fraction(4, 3);  // 4/8
    CHECK(half == Dyadic::from_fraction(1, 1));
    CHECK(half.numerator() == 1);
    CHECK(half.exponent() == 1);

    const Dyadic zero = Dyadic::from_fraction(0, 7);
    CHECK(zero.is_zero());
    CHECK(zero.exponent() == 0);
}

TEST_CASE("exact arithmetic") {
    const Dyadic a = Dyadic::from_fraction(3, 2);   // 3/4
    const Dyadic b = Dyadic::from_fraction(5, 3);   // 5/8
    CHECK(a + b == Dyadic::from_fraction(11, 3));
    CHECK(a - b == Dyadic::from_fraction(1, 3));
    CHECK((b - a).abs() == Dyadic::from_fraction(1, 3));
    CHECK(a.half() == Dyadic::from_fraction(3, 3));
    CHECK(a.mul_pow2(2) == Dyadic::from_int(3));
    CHECK(Dyadic::pow2(-3) == Dyadic::from_fraction(1, 3));
    CHECK(Dyadic::pow2(4) == Dyadic::from_int(16));
}

TEST_CASE("comparisons are exact at half-integer boundaries") {
    CHECK(Dyadic::from_fraction(1, 1) < Dyadic::from_fraction(3, 2));
    CHECK(Dyadic::from_fraction(3, 2) <= Dyadic::from_fraction(3, 2));
    CHECK(Dyadic::from_int(-1) < Dyadic());
    CHECK(Dyadic::min(Dyadic::from_int(2), Dyadic::from_fraction(3, 1)) ==
          Dyadic::from_fraction(3, 1));
}

TEST_CASE("floor and ceil for both signs") {
    CHECK(Dyadic::from_fraction(5, 1).floor_int() == 2);   // 5/2
    CHECK(Dyadic::from_fraction(5, 1).ceil_int() == 3);
    CHECK(Dyadic::from_fraction(-5, 1).floor_int() == -3);
    CHECK(Dyadic::from_fraction(-5, 1).ceil_int() == -2);
    CHECK(Dyadic::from_int(7).floor_int() == 7);
    CHECK(Dyadic::from_int(7).ceil_int() == 7);
    CHECK(Dyadic::from_int(7).is_integer());
    CHECK_FALSE(Dyadic::from_fraction(5, 1).is_integer());
}

TEST_CASE("round-up helper over-approximates") {
    const double v = 11.156854249492381;
    const Dyadic ub = Dyadic::from_double_round_up(v);
    CHECK(ub.to_double() >= v);
    CHECK(ub.to_double() - v < 1e-8);
}

TEST_CASE("text form") {
    CHECK(Dyadic::from_int(5).to_string() == "5");
    CHECK(Dyadic::from_fraction(5, 1).to_string() == "5/2^1");
    CHECK(Dyadic::from_fraction(-11, 3).to_string() == "-11/2^3");
    CHECK(Dyadic().to_string() == "0");
}
