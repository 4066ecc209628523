#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabkit/error.hpp"
#include "stabkit/serialize.hpp"
#include "support/gen.hpp"

using namespace stabkit;

namespace {

const GroupDescriptor kInt1 = GroupDescriptor::int_lattice(1);
const GroupDescriptor kDyadic1 = GroupDescriptor::dyadic_lattice(1);
const GroupDescriptor kBinSeq = GroupDescriptor::binary_seq();

Element dy(long long mantissa, unsigned exponent) {
    return Element(kDyadic1, DyadicVector{Dyadic::normalized(Int(mantissa), exponent)});
}

bool same_function(const TestFunction& a, const TestFunction& b) {
    return to_json(a) == to_json(b);
}

} // namespace

TEST_CASE("rational formatting") {
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(format_rational(Rational(-3, 4)) == "-3/4");
    CHECK(parse_rational("7/2") == Rational(7, 2));
    CHECK(parse_rational("-9") == Rational(-9));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("a/b"), Error);
    CHECK_THROWS_AS(parse_rational("1.5"), Error);
    CHECK(parse_rational("4/6") == Rational(2, 3)); // canonical form

    testgen::Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        Rational q = testgen::rand_rational(rng, 50, 16);
        CHECK(parse_rational(format_rational(q)) == q);
        CHECK(denominator(q) > 0);
        CHECK(gcd(numerator(q), denominator(q)) == 1);
    }
}

TEST_CASE("group specs round-trip") {
    for (const auto& g : {kInt1, GroupDescriptor::int_lattice(3), kDyadic1, kBinSeq})
        CHECK(group_from_text(group_to_text(g)) == g);
    CHECK_THROWS_AS(group_from_text("int:0"), Error);
    CHECK_THROWS_AS(group_from_text("octal:1"), Error);
}

TEST_CASE("functions round-trip through json") {
    std::vector<TestFunction> functions = {
        make_zero(kInt1),
        make_constant(kInt1, CodomainValue(Rational(-7, 3))),
        make_additive(Rational(3, 2), kDyadic1),
        make_extremal_cauchy(1, int_elem({1})),
        make_extremal_jensen(Rational(2, 3), dy(1, 0)),
        make_hyper_counterexample(bits_elem({1, 4})),
        make_identity(kBinSeq),
    };
    for (const auto& f : functions) {
        Json j = to_json(f);
        TestFunction back = function_from_json(j);
        CHECK(same_function(f, back));
        // Behaviour is preserved, not just shape.
        testgen::Rng rng(5);
        for (int i = 0; i < 20; ++i) {
            Element x = testgen::rand_element(rng, f.domain());
            CHECK(eval(f, x) == eval(back, x));
        }
    }
}

TEST_CASE("random scalar functions round-trip") {
    testgen::Rng rng(99);
    for (int i = 0; i < 50; ++i) {
        TestFunction f = testgen::rand_scalar_function(rng, kDyadic1);
        CHECK(same_function(f, function_from_json(to_json(f))));
    }
}

TEST_CASE("weights round-trip") {
    for (const auto& phi : {WeightFunction::linear(), WeightFunction::quadratic(),
                            WeightFunction::affine_floor(Rational(1, 2), 3)}) {
        WeightFunction back = weight_from_json(to_json(phi));
        CHECK(back.kind() == phi.kind());
        CHECK(back.eval(7) == phi.eval(7));
        CHECK(back.threshold_inverse(11) == phi.threshold_inverse(11));
    }
}

TEST_CASE("scan reports serialize to csv and json") {
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    ScanReport report = sup_defect_scan(f, Equation::Cauchy, Window::symmetric(8),
                                        {Rational(2), Rational(4)});
    std::string csv = to_csv(report);
    CHECK(csv ==
          "kind,r,value,x,y\n"
          "max,,5,\"int:[1]\",\"int:[1]\"\n"
          "shell,2,1,\"int:[8]\",\"int:[8]\"\n"
          "shell,4,1,\"int:[8]\",\"int:[8]\"\n");

    Json j = to_json(report);
    CHECK(j["max"]["value"] == "5");
    CHECK(j["shells"].size() == 2);
    CHECK(j["weight"].is_null());
}

TEST_CASE("cauchy certificates verify and resist tampering") {
    TestFunction f = make_extremal_cauchy(1, int_elem({1}));
    StabilityBudget budget(5, 1);
    CauchyCertificate cert = certify_cauchy(f, budget, int_elem({1}), int_elem({1}));
    Json j = to_json(cert);
    CHECK_NOTHROW(verify_certificate(j));

    Json tampered = j;
    tampered["bound"] = "4";
    CHECK_THROWS_AS(verify_certificate(tampered), Error);

    tampered = j;
    tampered["terms"][2]["value"] = "0";
    CHECK_THROWS_AS(verify_certificate(tampered), Error);

    tampered = j;
    tampered["witnesses"]["u"] = "int:[7]";
    CHECK_THROWS_AS(verify_certificate(tampered), Error);

    tampered = j;
    tampered["defect"] = "1";
    CHECK_THROWS_AS(verify_certificate(tampered), Error);

    tampered = j;
    tampered["side_conditions_ok"] = false;
    CHECK_THROWS_AS(verify_certificate(tampered), Error);

    tampered = j;
    tampered["extra"] = 1;
    CHECK_THROWS_AS(verify_certificate(tampered), Error);

    tampered = j;
    tampered.erase("bound");
    CHECK_THROWS_AS(verify_certificate(tampered), Error);
}

TEST_CASE("jensen and hyper certificates verify") {
    TestFunction f = make_extremal_jensen(1, dy(1, 0));
    StabilityBudget budget(5, 1);
    JensenCertificate jc = certify_jensen(f, budget, dy(1, 0), dy(-1, 0));
    Json j = to_json(jc);
    CHECK_NOTHROW(verify_certificate(j));
    j["terms"][0]["min_norm_ok"] = false;
    CHECK_THROWS_AS(verify_certificate(j), Error);

    TestFunction a = make_additive(2, kInt1);
    HyperBudget hb(1, 1, WeightFunction::linear(), 5);
    HyperCertificate hc = certify_hyper_cauchy(a, hb, int_elem({1}), int_elem({2}), Rational(1, 4));
    Json hj = to_json(hc);
    CHECK_NOTHROW(verify_certificate(hj));
    Json bad = hj;
    bad["R"] = "1";
    CHECK_THROWS_AS(verify_certificate(bad), Error);
    bad = hj;
    bad["epsilon"] = "1/8"; // R and flags no longer re-derive
    CHECK_THROWS_AS(verify_certificate(bad), Error);

    TestFunction aj = make_additive(1, kDyadic1);
    HyperBudget hbj(1, 1, WeightFunction::quadratic(), 4);
    HyperCertificate hjc = certify_hyper_jensen(aj, hbj, dy(1, 0), dy(3, 0), Rational(1, 2));
    CHECK_NOTHROW(verify_certificate(to_json(hjc)));
}

TEST_CASE("random certificates re-verify") {
    testgen::Rng rng(2025);
    for (int i = 0; i < 60; ++i) {
        TestFunction f = testgen::rand_scalar_function(rng, kInt1);
        StabilityBudget budget(testgen::rand_positive_rational(rng, 4), 1);
        CauchyCertificate cert = certify_cauchy(f, budget, testgen::rand_element(rng, kInt1),
                                                testgen::rand_element(rng, kInt1));
        CHECK_NOTHROW(verify_certificate(to_json(cert)));
    }
}

TEST_CASE("search results serialize") {
    SearchResult result = adversarial_sharpness_search(kInt1, Equation::Cauchy, 1,
                                                       Window::symmetric(3), 2);
    Json j = to_json(result);
    CHECK(j["best_sup"] == "5");
    CHECK(j["mode"] == "exhaustive");
    CHECK_NOTHROW(function_from_json(j["best_function"]));
}
