#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabkit/certify.hpp"
#include "stabkit/error.hpp"
#include "support/gen.hpp"

using namespace stabkit;

namespace {

const GroupDescriptor kInt1 = GroupDescriptor::int_lattice(1);
const GroupDescriptor kDyadic1 = GroupDescriptor::dyadic_lattice(1);

Element dy(long long mantissa, unsigned exponent) {
    return Element(kDyadic1, DyadicVector{Dyadic::normalized(Int(mantissa), exponent)});
}

} // namespace

TEST_CASE("cauchy witness selection on the integer lattice") {
    auto [u, v] = pick_cauchy_witnesses(kInt1, int_elem({2}), int_elem({3}), 10);
    CHECK(u == int_elem({12}));
    CHECK(v == int_elem({27}));
    CHECK(norm(add(u, v)) == 39);
    CHECK(norm(sub(int_elem({2}), u)) == 10);
    CHECK(norm(sub(int_elem({3}), v)) == 24);
    CHECK(norm(sub(int_elem({5}), add(u, v))) == 34);
}

TEST_CASE("cauchy witness selection at the origin") {
    auto [u, v] = pick_cauchy_witnesses(kInt1, int_elem({0}), int_elem({0}), 1);
    CHECK(u == int_elem({1}));
    CHECK(v == int_elem({2}));
}

TEST_CASE("cauchy witness selection on dyadics") {
    auto [u, v] = pick_cauchy_witnesses(kDyadic1, dy(1, 1), dy(0, 0), 2);
    CHECK(u == dy(3, 0));
    CHECK(v == dy(6, 0));
}

TEST_CASE("jensen witness selection") {
    CHECK(pick_jensen_witness(kDyadic1, dy(1, 0), dy(-1, 0), 4) == dy(6, 0));
    CHECK(pick_jensen_witness(kDyadic1, dy(0, 0), dy(0, 0), 1) == dy(1, 0));
    CHECK(pick_jensen_witness(kDyadic1, dy(3, 0), dy(5, 0), 2) == dy(10, 0));
    CHECK_THROWS_AS(pick_jensen_witness(kInt1, int_elem({0}), int_elem({0}), 1), Error);
}

TEST_CASE("witness side conditions hold for randomized inputs") {
    testgen::Rng rng(404);
    std::uniform_int_distribution<unsigned> idx(4, 12);
    for (int i = 0; i < 300; ++i) {
        Rational r = testgen::rand_positive_rational(rng, 10);
        for (const auto& g : {kInt1, kDyadic1, GroupDescriptor::binary_seq()}) {
            Element x = testgen::rand_element(rng, g);
            Element y = testgen::rand_element(rng, g);
            Rational cap = r;
            if (g.id == GroupId::BinarySeq) {
                // Chained witness norms grow like e^norm on BinarySeq, so the
                // fuzz stays at desk scale: small radius, light supports.
                cap = std::min(r, Rational(1));
                x = bits_elem({idx(rng), idx(rng)});
                y = bits_elem({idx(rng), idx(rng)});
            }
            auto [u, v] = pick_cauchy_witnesses(g, x, y, cap);
            Element upv = add(u, v);
            CHECK(norm(u) >= cap);
            CHECK(norm(v) >= cap);
            CHECK(norm(upv) >= cap);
            CHECK(norm(sub(x, u)) >= cap);
            CHECK(norm(sub(y, v)) >= cap);
            CHECK(norm(sub(add(x, y), upv)) >= cap);
        }
        Element x = testgen::rand_element(rng, kDyadic1);
        Element y = testgen::rand_element(rng, kDyadic1);
        Element u = pick_jensen_witness(kDyadic1, x, y, r);
        CHECK(norm(add(x, u)) >= r);
        CHECK(norm(add(y, u)) >= r);
        CHECK(norm(sub(x, u)) >= r);
        CHECK(norm(sub(y, u)) >= r);
    }
}

TEST_CASE("cauchy certificate attains the five-fold bound on the extremal pair") {
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    StabilityBudget budget(5, 1);
    CauchyCertificate cert = certify_cauchy(f, budget, int_elem({1}), int_elem({1}));
    REQUIRE(cert.terms.size() == 5);
    for (const auto& term : cert.terms) {
        CHECK(term.value == 1);
        CHECK(term.min_norm_ok);
    }
    CHECK(cert.bound == 5);
    CHECK(cert.defect_at_xy == 5);
    CHECK(cert.side_conditions_ok);
    CHECK(cert.sound);
}

TEST_CASE("cauchy certificates for additive controls are all-zero") {
    TestFunction f = make_additive(3, kInt1);
    StabilityBudget budget(2, 0);
    testgen::Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        CauchyCertificate cert = certify_cauchy(f, budget, testgen::rand_element(rng, kInt1),
                                                testgen::rand_element(rng, kInt1));
        CHECK(cert.bound == 0);
        for (const auto& term : cert.terms)
            CHECK(term.value == 0);
        CHECK(cert.side_conditions_ok);
    }
}

TEST_CASE("a misreported budget still yields a sound certificate") {
    // Zero except f(0) = 1: the (x, -x) pairs carry defect 1 at any radius,
    // so (r=1, eta=0) is a lie; the chain still dominates the defect.
    TestFunction f = perturb(make_zero(kInt1), {{int_elem({0}), CodomainValue(Rational(1))}});
    StabilityBudget budget(1, 0);
    Element x = int_elem({4});
    CauchyCertificate cert = certify_cauchy(f, budget, x, negate(x));
    CHECK(cert.defect_at_xy == 1);
    CHECK(cert.bound >= 1);
    bool some_term_nonzero = false;
    for (const auto& term : cert.terms)
        some_term_nonzero |= term.value > 0;
    CHECK(some_term_nonzero);
}

TEST_CASE("jensen certificate attains the four-fold bound on the extremal pair") {
    TestFunction f = make_extremal_jensen(1, dy(1, 0));
    StabilityBudget budget(5, 1);
    JensenCertificate cert = certify_jensen(f, budget, dy(1, 0), dy(-1, 0));
    REQUIRE(cert.terms.size() == 4);
    for (const auto& term : cert.terms) {
        CHECK(term.value == 1);
        CHECK(term.min_norm_ok);
    }
    CHECK(cert.bound == 4);
    CHECK(cert.defect_at_xy == 4);
    CHECK(cert.side_conditions_ok);
}

TEST_CASE("jensen certificates for exact solutions are all-zero") {
    StabilityBudget budget(3, 0);
    testgen::Rng rng(9);
    for (const TestFunction& f : {make_zero(kDyadic1), make_additive(1, kDyadic1)}) {
        for (int i = 0; i < 30; ++i) {
            JensenCertificate cert = certify_jensen(f, budget, testgen::rand_element(rng, kDyadic1),
                                                    testgen::rand_element(rng, kDyadic1));
            CHECK(cert.bound == 0);
        }
    }
}

TEST_CASE("soundness holds for random functions and canonical witnesses") {
    testgen::Rng rng(2024);
    for (int i = 0; i < 400; ++i) {
        TestFunction f = testgen::rand_scalar_function(rng, kInt1);
        Element x = testgen::rand_element(rng, kInt1);
        Element y = testgen::rand_element(rng, kInt1);
        StabilityBudget budget(testgen::rand_positive_rational(rng, 6), 0);
        CauchyCertificate cert = certify_cauchy(f, budget, x, y);
        CHECK(cert.bound >= cauchy_defect(f, x, y));
        CHECK(cert.side_conditions_ok);

        TestFunction fj = testgen::rand_scalar_function(rng, kDyadic1);
        Element xj = testgen::rand_element(rng, kDyadic1);
        Element yj = testgen::rand_element(rng, kDyadic1);
        JensenCertificate jcert = certify_jensen(fj, budget, xj, yj);
        CHECK(jcert.bound >= jensen_quad_defect(fj, xj, yj));
        CHECK(jcert.side_conditions_ok);
    }
}

TEST_CASE("soundness holds even for arbitrary witnesses") {
    testgen::Rng rng(31337);
    StabilityBudget budget(1, 0);
    for (int i = 0; i < 400; ++i) {
        TestFunction f = testgen::rand_scalar_function(rng, kInt1);
        Element x = testgen::rand_element(rng, kInt1);
        Element y = testgen::rand_element(rng, kInt1);
        Element u = testgen::rand_element(rng, kInt1);
        Element v = testgen::rand_element(rng, kInt1);
        CauchyCertificate cert = certify_cauchy_with(f, budget, x, y, u, v);
        CHECK(cert.bound >= cert.defect_at_xy);

        TestFunction fj = testgen::rand_scalar_function(rng, kDyadic1);
        Element xj = testgen::rand_element(rng, kDyadic1);
        Element yj = testgen::rand_element(rng, kDyadic1);
        Element uj = testgen::rand_element(rng, kDyadic1);
        JensenCertificate jcert = certify_jensen_with(fj, budget, xj, yj, uj);
        CHECK(jcert.bound >= jcert.defect_at_xy);
    }
}

TEST_CASE("theorem bound under a genuine budget") {
    // Every far pair of the extremal function has defect exactly 1, so under
    // (r=5, eta=1) each chain term is at most eta and the bound at most 5.
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    StabilityBudget budget(5, 1);
    testgen::Rng rng(64);
    for (int i = 0; i < 200; ++i) {
        Element x = testgen::rand_element(rng, kInt1, 20);
        Element y = testgen::rand_element(rng, kInt1, 20);
        CauchyCertificate cert = certify_cauchy(f, budget, x, y);
        for (const auto& term : cert.terms)
            CHECK(term.value <= budget.eta);
        CHECK(cert.bound <= 5 * budget.eta);
    }
}

TEST_CASE("budget estimation from scans") {
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    StabilityBudget b = budget_from_scan(f, Equation::Cauchy, Window::symmetric(16),
                                         {Rational(2), Rational(4), Rational(8)});
    CHECK(b.r == 2);
    CHECK(b.eta == 1);

    StabilityBudget z = budget_from_scan(make_zero(kInt1), Equation::Cauchy, Window::symmetric(8),
                                         {Rational(1), Rational(2)});
    CHECK(z.r == 1);
    CHECK(z.eta == 0);

    TestFunction p =
        perturb(make_additive(1, kInt1), {{int_elem({0}), CodomainValue(Rational(1))}});
    StabilityBudget pb =
        budget_from_scan(p, Equation::Cauchy, Window::symmetric(8), {Rational(1), Rational(2)});
    CHECK(pb.r == 1);
    CHECK(pb.eta == 1);

    CHECK_THROWS_AS(budget_from_scan(f, Equation::Cauchy, Window::symmetric(4), {}), Error);
    CHECK_THROWS_AS(budget_from_scan(f, Equation::Cauchy, Window::symmetric(4), {Rational(0)}),
                    Error);
}

TEST_CASE("budget validation") {
    CHECK_THROWS_AS(StabilityBudget(0, 1), Error);
    CHECK_THROWS_AS(StabilityBudget(1, -1), Error);
}
