#include "stabkit/certify.hpp"

#include "stabkit/error.hpp"

#include <algorithm>

namespace stabkit {

StabilityBudget::StabilityBudget(Rational r_, Rational eta_) : r(std::move(r_)), eta(std::move(eta_)) {
    if (r <= 0)
        fail(ErrorCode::InvalidArgument, "budget radius must be positive");
    if (eta < 0)
        fail(ErrorCode::InvalidArgument, "budget defect bound must be nonnegative");
}

namespace {

ChainTerm make_term(const TestFunction& f, Equation eq, Element left, Element right,
                    std::string description, const Rational& r) {
    Rational value = defect(eq, f, left, right);
    bool ok = std::min(norm(left), norm(right)) >= r;
    return {std::move(left), std::move(right), std::move(description), std::move(value), ok};
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

std::pair<Element, Element> pick_cauchy_witnesses(const GroupDescriptor& g, const Element& x,
                                                  const Element& y, const Rational& r) {
    if (!g.unbounded())
        fail(ErrorCode::Bounded, "witness selection needs an unbounded group");
    if (!(x.group() == g) || !(y.group() == g))
        fail(ErrorCode::GroupMismatch, "points outside the group");
    Element u = unbounded_witness(g, r + norm(x));
    Element v = unbounded_witness(g, r + norm(x) + norm(y) + norm(u));

    Element upv = add(u, v);
    Element xmu = sub(x, u);
    Element ymv = sub(y, v);
    Element rest = sub(add(x, y), upv);
    require_min_norms({{&u, "u"}, {&v, "v"}, {&upv, "u+v"}, {&xmu, "x-u"}, {&ymv, "y-v"},
                       {&rest, "x+y-u-v"}},
                      r, "cauchy witnesses");
    return {std::move(u), std::move(v)};
}

Element pick_jensen_witness(const GroupDescriptor& g, const Element& x, const Element& y,
                            const Rational& r) {
    if (!g.unbounded())
        fail(ErrorCode::Bounded, "witness selection needs an unbounded group");
    if (!g.uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "Jensen witnesses need a 2-divisible group");
    if (!(x.group() == g) || !(y.group() == g))
        fail(ErrorCode::GroupMismatch, "points outside the group");
    Element u = unbounded_witness(g, r + norm(x) + norm(y));

    Element xpu = add(x, u);
    Element ypu = add(y, u);
    Element xmu = sub(x, u);
    Element ymu = sub(y, u);
    require_min_norms({{&xpu, "x+u"}, {&ypu, "y+u"}, {&xmu, "x-u"}, {&ymu, "y-u"}}, r,
                      "jensen witness");
    return u;
}

CauchyCertificate certify_cauchy_with(const TestFunction& f, const StabilityBudget& budget,
                                      const Element& x, const Element& y, const Element& u,
                                      const Element& v) {
    Element xmu = sub(x, u);
    Element ymv = sub(y, v);
    Element upv = add(u, v);
    Element rest = sub(add(x, y), upv);

    // f(x+y) - f(x) - f(y) telescopes through these five pairs, so the sum
    // of their defects dominates the defect at (x, y).
    std::vector<ChainTerm> terms;
    terms.push_back(make_term(f, Equation::Cauchy, xmu, u, "split f(x) across (x-u, u)", budget.r));
    terms.push_back(make_term(f, Equation::Cauchy, ymv, v, "split f(y) across (y-v, v)", budget.r));
    terms.push_back(make_term(f, Equation::Cauchy, xmu, ymv, "join (x-u, y-v)", budget.r));
    terms.push_back(make_term(f, Equation::Cauchy, u, v, "join (u, v)", budget.r));
    terms.push_back(
        make_term(f, Equation::Cauchy, rest, upv, "split f(x+y) across (x+y-u-v, u+v)", budget.r));

    Rational bound = 0;
    for (const auto& t : terms)
        bound += t.value;

    Rational d = cauchy_defect(f, x, y);
    bool side_ok = std::min({norm(u), norm(v), norm(upv), norm(xmu), norm(ymv), norm(rest)}) >=
                   budget.r;
    bool sound = bound >= d;
    if (!sound)
        fail(ErrorCode::InvariantViolation, "certificate bound fell below the defect");
    return {f, budget, x, y, u, v, std::move(terms), std::move(bound), std::move(d), side_ok, sound};
}

CauchyCertificate certify_cauchy(const TestFunction& f, const StabilityBudget& budget,
                                 const Element& x, const Element& y) {
    auto [u, v] = pick_cauchy_witnesses(f.domain(), x, y, budget.r);
    return certify_cauchy_with(f, budget, x, y, u, v);
}

JensenCertificate certify_jensen_with(const TestFunction& f, const StabilityBudget& budget,
                                      const Element& x, const Element& y, const Element& u) {
    Element xpu = add(x, u);
    Element ypu = add(y, u);
    Element xmu = sub(x, u);
    Element ymu = sub(y, u);

    // 4f((x+y)/2) - 2f(x) - 2f(y) telescopes through two midpoint pairs and
    // two symmetric splits, all sharing the midpoint structure.
    std::vector<ChainTerm> terms;
    terms.push_back(make_term(f, Equation::JensenPlain, xpu, ymu,
                              "midpoint of (x+u, y-u) against f(x+u)+f(y-u)", budget.r));
    terms.push_back(make_term(f, Equation::JensenPlain, xmu, ypu,
                              "midpoint of (x-u, y+u) against f(x-u)+f(y+u)", budget.r));
    terms.push_back(make_term(f, Equation::JensenPlain, xpu, xmu,
                              "symmetric split of 2f(x) across (x+u, x-u)", budget.r));
    terms.push_back(make_term(f, Equation::JensenPlain, ypu, ymu,
                              "symmetric split of 2f(y) across (y+u, y-u)", budget.r));

    Rational bound = 0;
    for (const auto& t : terms)
        bound += t.value;

    Rational d = jensen_quad_defect(f, x, y);
    bool side_ok = std::min({norm(xpu), norm(ypu), norm(xmu), norm(ymu)}) >= budget.r;
    bool sound = bound >= d;
    if (!sound)
        fail(ErrorCode::InvariantViolation, "certificate bound fell below the defect");
    return {f, budget, x, y, u, std::move(terms), std::move(bound), std::move(d), side_ok, sound};
}

JensenCertificate certify_jensen(const TestFunction& f, const StabilityBudget& budget,
                                 const Element& x, const Element& y) {
    Element u = pick_jensen_witness(f.domain(), x, y, budget.r);
    return certify_jensen_with(f, budget, x, y, u);
}

StabilityBudget budget_from_scan(const TestFunction& f, Equation eq, const Window& window,
                                 const std::vector<Rational>& r_grid) {
    if (r_grid.empty())
        fail(ErrorCode::EmptyGrid, "budget estimation needs at least one radius");
    for (const auto& r : r_grid)
        if (r <= 0)
            fail(ErrorCode::InvalidArgument, "budget radii must be positive");
    ScanReport report = sup_defect_scan(f, eq, window, r_grid);
    const ShellEntry* best = nullptr;
    for (const auto& shell : report.shells)
        if (!best || shell.sup < best->sup)
            best = &shell;
    return {best->r, best->sup};
}

} // namespace stabkit
