#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabkit/error.hpp"
#include "stabkit/groups.hpp"
#include "support/gen.hpp"

using namespace stabkit;

namespace {

const GroupDescriptor kInt1 = GroupDescriptor::int_lattice(1);
const GroupDescriptor kInt2 = GroupDescriptor::int_lattice(2);
const GroupDescriptor kDyadic1 = GroupDescriptor::dyadic_lattice(1);
const GroupDescriptor kBinSeq = GroupDescriptor::binary_seq();

Element dy(long long mantissa, unsigned exponent) {
    return Element(kDyadic1, DyadicVector{Dyadic::normalized(Int(mantissa), exponent)});
}

} // namespace

TEST_CASE("descriptor capability flags") {
    CHECK_FALSE(kInt1.uniquely_2_divisible());
    CHECK(kInt1.unbounded());
    CHECK(kInt1.doubling_unbounded());

    CHECK(kDyadic1.uniquely_2_divisible());
    CHECK(kDyadic1.unbounded());
    CHECK(kDyadic1.doubling_unbounded());

    CHECK_FALSE(kBinSeq.uniquely_2_divisible());
    CHECK(kBinSeq.unbounded());
    CHECK_FALSE(kBinSeq.doubling_unbounded());
}

TEST_CASE("addition on the three groups") {
    CHECK(add(int_elem({2}), int_elem({3})) == int_elem({5}));
    CHECK(add(bits_elem({1, 2}), bits_elem({2, 3})) == bits_elem({1, 3}));
    // 3/2 + 1/2 = 2
    CHECK(add(dy(3, 1), dy(1, 1)) == dy(2, 0));
}

TEST_CASE("addition rejects mixed groups") {
    CHECK_THROWS_AS(add(int_elem({1}), bits_elem({1})), Error);
    try {
        add(int_elem({1}), Element(kInt2, IntVector{Int(1), Int(0)}));
        FAIL("expected group mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GroupMismatch);
    }
}

TEST_CASE("negation") {
    CHECK(negate(int_elem({7})) == int_elem({-7}));
    CHECK(negate(bits_elem({1, 5})) == bits_elem({1, 5}));
    CHECK(negate(dy(3, 2)) == dy(-3, 2));
}

TEST_CASE("norms are exact") {
    // 1 + 1/2 + 1/3 = 11/6
    CHECK(norm(bits_elem({1, 2, 3})) == Rational(11, 6));
    CHECK(norm(Element(kInt2, IntVector{Int(-3), Int(4)})) == Rational(7));
    CHECK(norm(zero(kInt1)) == 0);
    CHECK(norm(zero(kDyadic1)) == 0);
    CHECK(norm(zero(kBinSeq)) == 0);
    CHECK(norm(dy(3, 1)) == Rational(3, 2));
}

TEST_CASE("doubling") {
    CHECK(twice(int_elem({5})) == int_elem({10}));
    CHECK(twice(bits_elem({2, 7})) == zero(kBinSeq));
    CHECK(twice(dy(3, 1)) == dy(3, 0));
}

TEST_CASE("halving") {
    CHECK(halve(dy(3, 0)) == dy(3, 1));
    CHECK(halve(dy(0, 0)) == dy(0, 0));
    try {
        halve(int_elem({4}));
        FAIL("expected NotDivisible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDivisible);
    }
    CHECK_THROWS_AS(halve(bits_elem({1})), Error);
}

TEST_CASE("unbounded witnesses") {
    CHECK(unbounded_witness(kInt1, 12) == int_elem({12}));
    CHECK(unbounded_witness(kDyadic1, Rational(7, 2)) == dy(4, 0));

    // Harmonic prefix: H_10 < 3 <= H_11.
    Element w = unbounded_witness(kBinSeq, 3);
    BitSupport expected;
    for (unsigned i = 1; i <= 11; ++i)
        expected.insert(i);
    CHECK(w == bits_elem(expected));
    CHECK(harmonic(10) < 3);
    CHECK(harmonic(11) >= 3);
    CHECK(harmonic(11) == Rational(83711, 27720));
}

TEST_CASE("doubling witnesses") {
    Element u = doubling_witness(kInt1, 9);
    CHECK(u == int_elem({5}));
    CHECK(norm(twice(u)) >= 9);

    CHECK(doubling_witness(kDyadic1, 0) == dy(0, 0));

    try {
        doubling_witness(kBinSeq, 1);
        FAIL("expected DoublingBounded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DoublingBounded);
    }
}

TEST_CASE("group laws on random samples") {
    testgen::Rng rng(20260810);
    for (const auto& g : {kInt1, kInt2, kDyadic1, kBinSeq}) {
        for (int i = 0; i < 200; ++i) {
            Element a = testgen::rand_element(rng, g);
            Element b = testgen::rand_element(rng, g);
            Element c = testgen::rand_element(rng, g);

            CHECK(add(add(a, b), c) == add(a, add(b, c)));
            CHECK(add(a, b) == add(b, a));
            CHECK(add(a, zero(g)) == a);
            CHECK(add(a, negate(a)) == zero(g));

            // Norm axioms.
            CHECK(norm(a) >= 0);
            CHECK((norm(a) == 0) == a.is_zero());
            CHECK(norm(negate(a)) == norm(a));
            CHECK(norm(add(a, b)) <= norm(a) + norm(b));

            // Translation invariance of the induced metric.
            CHECK(distance(add(a, c), add(b, c)) == distance(a, b));

            // Doubling inequality, with the group-specific refinements.
            CHECK(norm(twice(a)) <= 2 * norm(a));
            if (g.id == GroupId::BinarySeq)
                CHECK(norm(twice(a)) == 0);
            else
                CHECK(norm(twice(a)) == 2 * norm(a));
        }
    }
}

TEST_CASE("halve and twice invert each other on dyadics") {
    testgen::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Element a = testgen::rand_element(rng, kDyadic1);
        CHECK(twice(halve(a)) == a);
        CHECK(halve(twice(a)) == a);
    }
}

TEST_CASE("witness norms reach the requested bound") {
    testgen::Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        Rational m = testgen::rand_positive_rational(rng, 10);
        for (const auto& g : {kInt1, kInt2, kDyadic1}) {
            CHECK(norm(unbounded_witness(g, m)) >= m);
            CHECK(norm(twice(doubling_witness(g, m))) >= m);
        }
        CHECK(norm(unbounded_witness(kBinSeq, std::min(m, Rational(4)))) >=
              std::min(m, Rational(4)));
    }
}

TEST_CASE("harmonic witness works up to the documented cap") {
    Element w = unbounded_witness(kBinSeq, 10);
    CHECK(norm(w) >= 10);
    unsigned n = static_cast<unsigned>(w.support().size());
    CHECK(harmonic(n - 1) < 10); // minimality
}

TEST_CASE("element text round-trips") {
    for (const Element& e :
         {int_elem({-3, 4}), dy(3, 1), dy(0, 0), bits_elem({1, 2, 3}), zero(kBinSeq)}) {
        CHECK(element_from_text(e.group(), to_text(e)) == e);
    }
    CHECK(to_text(int_elem({-3, 4})) == "int:[-3,4]");
    CHECK(to_text(dy(3, 1)) == "dyadic:[3/2^1]");
    CHECK(to_text(bits_elem({2, 1})) == "bits:{1,2}");
    CHECK(to_text(zero(kBinSeq)) == "bits:{}");
}

TEST_CASE("dyadic normalization is canonical") {
    CHECK(dy(6, 1) == dy(3, 0)); // 6/2 = 3
    CHECK(dy(4, 2) == dy(1, 0));
    CHECK(dy(0, 5) == dy(0, 0));
    Element e = dyadic_elem({Rational(6, 4)});
    CHECK(e == dy(3, 1));
    CHECK_THROWS_AS(dyadic_elem({Rational(1, 3)}), Error);
}
