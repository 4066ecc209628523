#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabkit/error.hpp"
#include "stabkit/search.hpp"
#include "support/gen.hpp"

using namespace stabkit;

namespace {

const GroupDescriptor kInt1 = GroupDescriptor::int_lattice(1);
const GroupDescriptor kDyadic1 = GroupDescriptor::dyadic_lattice(1);

Element dy(long long mantissa, unsigned exponent) {
    return Element(kDyadic1, DyadicVector{Dyadic::normalized(Int(mantissa), exponent)});
}

// Oracle: window-restricted shell sup, a lower bound for the group-wide one.
Rational window_shell_sup(const TestFunction& f, Equation eq, const Rational& r,
                          const Window& window) {
    auto elems = enumerate_window(f.domain(), window);
    Rational sup = 0;
    for (const auto& x : elems)
        for (const auto& y : elems)
            if (std::min(norm(x), norm(y)) >= r)
                sup = std::max(sup, defect(eq, f, x, y));
    return sup;
}

} // namespace

TEST_CASE("exact shell sups of the extremal cauchy function") {
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    // Once the shell excludes the bumped point the defect settles at eps.
    CHECK(exact_shell_sup(f, Equation::Cauchy, 2) == 1);
    CHECK(exact_shell_sup(f, Equation::Cauchy, 5) == 1);
    // A shell containing the bump still sees the five-fold spike at (1,1).
    CHECK(exact_shell_sup(f, Equation::Cauchy, Rational(1, 2)) == 5);
    CHECK(exact_limsup(f, Equation::Cauchy) == 1);
}

TEST_CASE("exact shell sups of the extremal jensen function") {
    TestFunction f = make_extremal_jensen(1, dy(1, 0));
    CHECK(exact_shell_sup(f, Equation::JensenPlain, 2) == 1);
    CHECK(exact_limsup(f, Equation::JensenPlain) == 1);
    // Shells containing the override points see the larger plain defects.
    CHECK(exact_shell_sup(f, Equation::JensenPlain, Rational(1, 2)) == 2);
}

TEST_CASE("exact shell sups for exact solutions vanish") {
    CHECK(exact_shell_sup(make_additive(3, kInt1), Equation::Cauchy, 1) == 0);
    CHECK(exact_limsup(make_additive(Rational(3, 2), kDyadic1), Equation::JensenPlain) == 0);
    CHECK(exact_limsup(make_zero(kInt1), Equation::Cauchy) == 0);
    // A nonzero constant has Cauchy defect |c| everywhere.
    CHECK(exact_limsup(make_constant(kInt1, CodomainValue(Rational(2))), Equation::Cauchy) == 2);
}

TEST_CASE("exact shell sup dominates every window estimate") {
    testgen::Rng rng(808);
    for (int i = 0; i < 40; ++i) {
        TestFunction f = testgen::rand_scalar_function(rng, kInt1, 3);
        for (const Rational& r : {Rational(1), Rational(3)}) {
            Rational exact = exact_shell_sup(f, Equation::Cauchy, r);
            Rational windowed = window_shell_sup(f, Equation::Cauchy, r, Window::symmetric(18));
            CHECK(exact >= windowed);
        }
        CHECK(exact_shell_sup(f, Equation::Cauchy, 2) >=
              exact_shell_sup(f, Equation::Cauchy, 6)); // nested shells
        CHECK(exact_shell_sup(f, Equation::Cauchy, 40) == exact_limsup(f, Equation::Cauchy));
    }
}

TEST_CASE("generous windows recover the exact shell sup for known functions") {
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    CHECK(window_shell_sup(f, Equation::Cauchy, 2, Window::symmetric(48)) ==
          exact_shell_sup(f, Equation::Cauchy, 2));

    TestFunction j = make_extremal_jensen(1, dy(1, 0));
    CHECK(window_shell_sup(j, Equation::JensenPlain, 2,
                           Window::symmetric(24, Rational(1, 2))) ==
          exact_shell_sup(j, Equation::JensenPlain, 2));
}

TEST_CASE("exact shell sup handles the group-valued counterexample") {
    TestFunction f = make_hyper_counterexample(bits_elem({1}));
    // Far diagonal pairs sum to zero and keep the full defect norm(a) = 1.
    CHECK(exact_limsup(f, Equation::Cauchy) == 1);
    CHECK(exact_shell_sup(f, Equation::Cauchy, 1) == 1);
}

TEST_CASE("tiny exhaustive cauchy search recovers the five-fold spike") {
    SearchResult result = adversarial_sharpness_search(kInt1, Equation::Cauchy, 1,
                                                       Window::symmetric(4), 2);
    CHECK(result.exhaustive);
    CHECK(result.best_sup == 5);
    // The winner is genuinely feasible and genuinely attains its sup.
    CHECK(exact_shell_sup(result.best, Equation::Cauchy, 2) <= 1);
    ScanReport scan = sup_defect_scan(result.best, Equation::Cauchy, Window::symmetric(4), {});
    CHECK(scan.max_defect == 5);
}

TEST_CASE("spec-scale exhaustive search on a wider window") {
    SearchConfig config;
    config.max_support = 2; // the extremal shape needs a single override
    SearchResult result = adversarial_sharpness_search(kInt1, Equation::Cauchy, 1,
                                                       Window::symmetric(6), 2, config);
    CHECK(result.best_sup == 5);
}

TEST_CASE("tiny exhaustive jensen-quad search recovers the four-fold spike") {
    SearchResult result = adversarial_sharpness_search(
        kDyadic1, Equation::JensenQuad, 1, Window::symmetric(4, Rational(1, 2)), 2);
    CHECK(result.exhaustive);
    CHECK(result.best_sup == 4);
    CHECK(exact_shell_sup(result.best, Equation::JensenPlain, 2) <= 1);
}

TEST_CASE("eps zero forces additivity and a zero sup") {
    SearchResult cauchy =
        adversarial_sharpness_search(kInt1, Equation::Cauchy, 0, Window::symmetric(4), 2);
    CHECK(cauchy.best_sup == 0);

    SearchResult jensen = adversarial_sharpness_search(kDyadic1, Equation::JensenQuad, 0,
                                                       Window::symmetric(4, Rational(1, 2)), 2);
    CHECK(jensen.best_sup == 0);
}

TEST_CASE("hill climb stays under the ceiling and is seed-deterministic") {
    SearchConfig config;
    config.mode = SearchConfig::Mode::HillClimb;
    config.iterations = 150;
    config.restarts = 2;
    config.seed = 12345;
    SearchResult a = adversarial_sharpness_search(kInt1, Equation::Cauchy, 1,
                                                  Window::symmetric(8), 2, config);
    SearchResult b = adversarial_sharpness_search(kInt1, Equation::Cauchy, 1,
                                                  Window::symmetric(8), 2, config);
    CHECK(a.best_sup <= 5);
    CHECK(a.best_sup == b.best_sup);
    CHECK(a.candidates_tried == b.candidates_tried);
    CHECK_FALSE(a.exhaustive);
    CHECK(exact_shell_sup(a.best, Equation::Cauchy, 2) <= 1);
}

TEST_CASE("search argument validation") {
    CHECK_THROWS_AS(
        adversarial_sharpness_search(kInt1, Equation::Cauchy, -1, Window::symmetric(4), 2), Error);
    CHECK_THROWS_AS(
        adversarial_sharpness_search(kInt1, Equation::Cauchy, 1, Window::symmetric(4), 0), Error);
    CHECK_THROWS_AS(
        adversarial_sharpness_search(kInt1, Equation::Cauchy, 1, Window::symmetric(4), 9), Error);
    CHECK_THROWS_AS(
        adversarial_sharpness_search(kInt1, Equation::JensenPlain, 1, Window::symmetric(4), 2),
        Error);
    CHECK_THROWS_AS(
        adversarial_sharpness_search(kInt1, Equation::JensenQuad, 1, Window::symmetric(4), 2),
        Error);
}
