#pragma once

#include "stabkit/defect.hpp"

#include <array>
#include <string>

namespace stabkit {

/// Region/defect budget: the defect of f is supposed to be at most eta on
/// every pair whose norms both reach r.
struct StabilityBudget {
    Rational r;
    Rational eta;

    StabilityBudget(Rational r, Rational eta);
};

/// One link of a certificate chain: the defect of f at (left, right), with
/// a flag recording whether the pair lies in the budget region.
struct ChainTerm {
    Element left;
    Element right;
    std::string description;
    Rational value;
    bool min_norm_ok;
};

/// A five-term chain bounding the Cauchy defect at (x, y) through the
/// witnesses u, v. The triangle inequality makes bound >= defect
/// unconditionally, whatever the witnesses are; side_conditions_ok records
/// whether all six witness norms reach the budget radius.
struct CauchyCertificate {
    TestFunction function;
    StabilityBudget budget;
    Element x, y;
    Element u, v;
    std::vector<ChainTerm> terms; // exactly 5
    Rational bound;               // sum of term values
    Rational defect_at_xy;        // cauchy_defect(f, x, y)
    bool side_conditions_ok;
    bool sound; // bound >= defect_at_xy; always true

    static constexpr std::size_t term_count = 5;
};

/// The four-term Jensen analogue through the single witness u; bound
/// dominates the quadrupled Jensen defect at (x, y).
struct JensenCertificate {
    TestFunction function;
    StabilityBudget budget;
    Element x, y;
    Element u;
    std::vector<ChainTerm> terms; // exactly 4
    Rational bound;
    Rational defect_at_xy; // jensen_quad_defect(f, x, y)
    bool side_conditions_ok;
    bool sound;

    static constexpr std::size_t term_count = 4;
};

/// u with norm(u) >= r + norm(x), then v with norm(v) >= r + norm(x) +
/// norm(y) + norm(u). All six chain norms (u, v, u+v, x-u, y-v, x+y-u-v)
/// then reach r; the construction is re-verified before returning.
std::pair<Element, Element> pick_cauchy_witnesses(const GroupDescriptor& g, const Element& x,
                                                  const Element& y, const Rational& r);

/// u with norm(u) >= r + norm(x) + norm(y), putting x+u, y+u, x-u, y-u all
/// at norm >= r. Needs a 2-divisible, unbounded group.
Element pick_jensen_witness(const GroupDescriptor& g, const Element& x, const Element& y,
                            const Rational& r);

CauchyCertificate certify_cauchy(const TestFunction& f, const StabilityBudget& budget,
                                 const Element& x, const Element& y);

/// Same chain with caller-chosen witnesses; soundness still holds.
CauchyCertificate certify_cauchy_with(const TestFunction& f, const StabilityBudget& budget,
                                      const Element& x, const Element& y, const Element& u,
                                      const Element& v);

JensenCertificate certify_jensen(const TestFunction& f, const StabilityBudget& budget,
                                 const Element& x, const Element& y);

JensenCertificate certify_jensen_with(const TestFunction& f, const StabilityBudget& budget,
                                      const Element& x, const Element& y, const Element& u);

/// Empirical budget: the smallest grid radius whose window shell sup is
/// minimal, paired with that sup. Only a true budget when f follows its
/// base rule outside the window.
StabilityBudget budget_from_scan(const TestFunction& f, Equation eq, const Window& window,
                                 const std::vector<Rational>& r_grid);

} // namespace stabkit
