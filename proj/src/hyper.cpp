#include "stabkit/hyper.hpp"

#include "stabkit/error.hpp"

#include <algorithm>

namespace stabkit {

HyperBudget::HyperBudget(Rational r_, Rational K_, WeightFunction phi_, unsigned term_count_)
    : r(std::move(r_)), K(std::move(K_)), phi(std::move(phi_)), term_count(term_count_) {
    if (r <= 0)
        fail(ErrorCode::InvalidArgument, "hyper budget radius must be positive");
    if (K <= 0)
        fail(ErrorCode::InvalidArgument, "hyper budget constant must be positive");
    if (term_count != 4 && term_count != 5)
        fail(ErrorCode::InvalidArgument, "hyper chains have 4 or 5 terms");
}

namespace {

HyperChainTerm make_hyper_term(const TestFunction& f, Equation eq, const HyperBudget& hb,
                               const Rational& R, Element left, Element right,
                               std::string description) {
    Rational value = defect(eq, f, left, right);
    Rational diff_norm = distance(left, right);
    Rational weighted = hb.phi.eval(diff_norm) * value;
    bool min_ok = std::min(norm(left), norm(right)) >= hb.r;
    bool diff_ok = diff_norm >= R;
    bool weighted_ok = weighted < hb.K;
    return {std::move(left), std::move(right), std::move(description),
            std::move(value), std::move(weighted), min_ok, diff_ok, weighted_ok};
}

void require_min_norms(std::initializer_list<std::pair<const Element*, const char*>> items,
                       const Rational& bound, const char* what) {
    for (const auto& [elem, label] : items) {
        if (norm(*elem) < bound)
            fail(ErrorCode::InvariantViolation,
                 std::string(what) + ": " + label + " fell below the required norm");
    }
}

} // namespace

std::pair<Element, Element> pick_hyper_cauchy_witnesses(const GroupDescriptor& g, const Element& x,
                                                        const Element& y, const Rational& r,
                                                        const Rational& R) {
    if (!g.doubling_unbounded())
        fail(ErrorCode::DoublingBounded, "2X bounded: no hyper witnesses exist");
    if (!(x.group() == g) || !(y.group() == g))
        fail(ErrorCode::GroupMismatch, "points outside the group");
    Element u = doubling_witness(g, 2 * r + R + 2 * norm(x));
    Element v = doubling_witness(g, 2 * r + 2 * R + 2 * norm(x) + 2 * norm(y) + 2 * norm(u));

    Element upv = add(u, v);
    Element xmu = sub(x, u);
    Element ymv = sub(y, v);
    Element rest = sub(add(x, y), upv);
    require_min_norms({{&u, "u"}, {&v, "v"}, {&upv, "u+v"}, {&xmu, "x-u"}, {&ymv, "y-v"},
                       {&rest, "x+y-u-v"}},
                      r, "hyper cauchy witnesses");

    Element xm2u = sub(x, twice(u));
    Element ym2v = sub(y, twice(v));
    Element xy_umv = sub(sub(x, y), sub(u, v));
    Element umv = sub(u, v);
    Element rest2 = sub(add(x, y), twice(upv));
    require_min_norms({{&xm2u, "x-2u"}, {&ym2v, "y-2v"}, {&xy_umv, "x-y-u+v"}, {&umv, "u-v"},
                       {&rest2, "x+y-2(u+v)"}},
                      R, "hyper cauchy witnesses");
    return {std::move(u), std::move(v)};
}

Element pick_hyper_jensen_witness(const GroupDescriptor& g, const Element& x, const Element& y,
                                  const Rational& r, const Rational& R) {
    if (!g.uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "Jensen hyper witnesses need a 2-divisible group");
    if (!g.doubling_unbounded())
        fail(ErrorCode::DoublingBounded, "2X bounded: no hyper witnesses exist");
    if (!(x.group() == g) || !(y.group() == g))
        fail(ErrorCode::GroupMismatch, "points outside the group");
    Element u = doubling_witness(g, 2 * r + R + 2 * norm(x) + 2 * norm(y));

    Element xpu = add(x, u);
    Element ypu = add(y, u);
    Element xmu = sub(x, u);
    Element ymu = sub(y, u);
    require_min_norms({{&xpu, "x+u"}, {&ypu, "y+u"}, {&xmu, "x-u"}, {&ymu, "y-u"}}, r,
                      "hyper jensen witness");

    Element two_u = twice(u);
    Element diff = sub(x, y);
    Element dp = add(diff, two_u);
    Element dm = sub(diff, two_u);
    require_min_norms({{&two_u, "2u"}, {&dp, "x-y+2u"}, {&dm, "x-y-2u"}}, R,
                      "hyper jensen witness");
    return u;
}

namespace {

HyperCertificate finish_certificate(const TestFunction& f, const HyperBudget& hb, Equation eq,
                                    const Rational& eps, Rational R, const Element& x,
                                    const Element& y, Element u, std::optional<Element> v,
                                    std::vector<HyperChainTerm> terms,
                                    std::initializer_list<const Element*> r_set,
                                    std::initializer_list<const Element*> R_set) {
    Rational bound = 0;
    for (const auto& t : terms)
        bound += t.value;

    Rational d = eq == Equation::Cauchy ? cauchy_defect(f, x, y) : jensen_quad_defect(f, x, y);
    bool sound = bound >= d;
    if (!sound)
        fail(ErrorCode::InvariantViolation, "certificate bound fell below the defect");

    auto min_norm_of = [](std::initializer_list<const Element*> set) {
        Rational m;
        bool first = true;
        for (const Element* e : set) {
            Rational n = norm(*e);
            if (first || n < m)
                m = n;
            first = false;
        }
        return m;
    };
    bool side_ok = min_norm_of(r_set) >= hb.r;
    bool diff_ok = min_norm_of(R_set) >= R;
    bool respected = std::ranges::all_of(terms, [](const HyperChainTerm& t) { return t.weighted_ok; });

    return {f, hb, eq, eps, std::move(R), x, y, std::move(u), std::move(v),
            std::move(terms), std::move(bound), std::move(d), side_ok, diff_ok, respected, sound};
}

} // namespace

HyperCertificate certify_hyper_cauchy_with(const TestFunction& f, const HyperBudget& hb,
                                           const Element& x, const Element& y, const Rational& eps,
                                           const Element& u, const Element& v) {
    if (eps <= 0)
        fail(ErrorCode::InvalidArgument, "target epsilon must be positive");
    Rational R = hb.phi.threshold_inverse(hb.term_count * hb.K / eps);

    Element xmu = sub(x, u);
    Element ymv = sub(y, v);
    Element upv = add(u, v);
    Element rest = sub(add(x, y), upv);

    std::vector<HyperChainTerm> terms;
    terms.push_back(make_hyper_term(f, Equation::Cauchy, hb, R, xmu, u,
                                    "split f(x) across (x-u, u)"));
    terms.push_back(make_hyper_term(f, Equation::Cauchy, hb, R, ymv, v,
                                    "split f(y) across (y-v, v)"));
    terms.push_back(make_hyper_term(f, Equation::Cauchy, hb, R, xmu, ymv, "join (x-u, y-v)"));
    terms.push_back(make_hyper_term(f, Equation::Cauchy, hb, R, u, v, "join (u, v)"));
    terms.push_back(make_hyper_term(f, Equation::Cauchy, hb, R, rest, upv,
                                    "split f(x+y) across (x+y-u-v, u+v)"));

    Element xm2u = sub(x, twice(u));
    Element ym2v = sub(y, twice(v));
    Element xy_umv = sub(sub(x, y), sub(u, v));
    Element umv = sub(u, v);
    Element rest2 = sub(add(x, y), twice(upv));

    return finish_certificate(f, hb, Equation::Cauchy, eps, std::move(R), x, y, u, v,
                              std::move(terms),
                              {&u, &v, &upv, &xmu, &ymv, &rest},
                              {&xm2u, &ym2v, &xy_umv, &umv, &rest2});
}

HyperCertificate certify_hyper_cauchy(const TestFunction& f, const HyperBudget& hb,
                                      const Element& x, const Element& y, const Rational& eps) {
    if (eps <= 0)
        fail(ErrorCode::InvalidArgument, "target epsilon must be positive");
    if (hb.term_count != 5)
        fail(ErrorCode::InvalidArgument, "Cauchy hyper chains carry 5 terms");
    Rational R = hb.phi.threshold_inverse(hb.term_count * hb.K / eps);
    auto [u, v] = pick_hyper_cauchy_witnesses(f.domain(), x, y, hb.r, R);
    return certify_hyper_cauchy_with(f, hb, x, y, eps, u, v);
}

HyperCertificate certify_hyper_jensen_with(const TestFunction& f, const HyperBudget& hb,
                                           const Element& x, const Element& y, const Rational& eps,
                                           const Element& u) {
    if (eps <= 0)
        fail(ErrorCode::InvalidArgument, "target epsilon must be positive");
    Rational R = hb.phi.threshold_inverse(hb.term_count * hb.K / eps);

    Element xpu = add(x, u);
    Element ypu = add(y, u);
    Element xmu = sub(x, u);
    Element ymu = sub(y, u);

    std::vector<HyperChainTerm> terms;
    terms.push_back(make_hyper_term(f, Equation::JensenPlain, hb, R, xpu, ymu,
                                    "midpoint of (x+u, y-u) against f(x+u)+f(y-u)"));
    terms.push_back(make_hyper_term(f, Equation::JensenPlain, hb, R, xmu, ypu,
                                    "midpoint of (x-u, y+u) against f(x-u)+f(y+u)"));
    terms.push_back(make_hyper_term(f, Equation::JensenPlain, hb, R, xpu, xmu,
                                    "symmetric split of 2f(x) across (x+u, x-u)"));
    terms.push_back(make_hyper_term(f, Equation::JensenPlain, hb, R, ypu, ymu,
                                    "symmetric split of 2f(y) across (y+u, y-u)"));

    Element two_u = twice(u);
    Element diff = sub(x, y);
    Element dp = add(diff, two_u);
    Element dm = sub(diff, two_u);

    return finish_certificate(f, hb, Equation::JensenQuad, eps, std::move(R), x, y, u,
                              std::nullopt, std::move(terms),
                              {&xpu, &ypu, &xmu, &ymu},
                              {&two_u, &dp, &dm});
}

HyperCertificate certify_hyper_jensen(const TestFunction& f, const HyperBudget& hb,
                                      const Element& x, const Element& y, const Rational& eps) {
    if (eps <= 0)
        fail(ErrorCode::InvalidArgument, "target epsilon must be positive");
    if (hb.term_count != 4)
        fail(ErrorCode::InvalidArgument, "Jensen hyper chains carry 4 terms");
    Rational R = hb.phi.threshold_inverse(hb.term_count * hb.K / eps);
    Element u = pick_hyper_jensen_witness(f.domain(), x, y, hb.r, R);
    return certify_hyper_jensen_with(f, hb, x, y, eps, u);
}

} // namespace stabkit
