#pragma once

#include "stabkit/certify.hpp"
#include "stabkit/weight.hpp"

namespace stabkit {

/// Weighted-defect budget: phi(norm(x-y)) * defect < K whenever both norms
/// reach r. term_count is 5 for the Cauchy chain, 4 for Jensen.
struct HyperBudget {
    Rational r;
    Rational K;
    WeightFunction phi;
    unsigned term_count;

    HyperBudget(Rational r, Rational K, WeightFunction phi, unsigned term_count);
};

/// A chain term carrying both condition flags: the pair sits in the budget
/// region (min_norm_ok) and its difference clears the weight threshold R
/// (diff_norm_ok). weighted = phi(norm(left-right)) * value.
struct HyperChainTerm {
    Element left;
    Element right;
    std::string description;
    Rational value;
    Rational weighted;
    bool min_norm_ok;  // min(norm(left), norm(right)) >= r
    bool diff_norm_ok; // norm(left - right) >= R
    bool weighted_ok;  // weighted < K, the budget premise at this pair
};

/// The weighted analogue of a stability certificate. R is chosen so the
/// weight reaches term_count*K/epsilon beyond it; when the budget premise
/// genuinely holds, every term defect is below epsilon/term_count and the
/// bound lands below epsilon. Soundness (bound >= defect) is unconditional.
struct HyperCertificate {
    TestFunction function;
    HyperBudget budget;
    Equation equation; // Cauchy or JensenQuad
    Rational epsilon;
    Rational threshold_R;
    Element x, y;
    Element u;
    std::optional<Element> v; // Cauchy only
    std::vector<HyperChainTerm> terms;
    Rational bound;
    Rational defect_at_xy;
    bool side_conditions_ok; // all r-conditions
    bool diff_conditions_ok; // all R-conditions
    bool budget_respected;   // all weighted_ok
    bool sound;
};

/// u with norm(2u) >= 2r + R + 2 norm(x), then v with norm(2v) >= 2r + 2R +
/// 2 norm(x) + 2 norm(y) + 2 norm(u). Both the six r-conditions and the five
/// R-conditions then hold; errors with DoublingBounded when 2X is bounded
/// (BinarySeq), which is exactly the case the hyperstability result excludes.
std::pair<Element, Element> pick_hyper_cauchy_witnesses(const GroupDescriptor& g, const Element& x,
                                                        const Element& y, const Rational& r,
                                                        const Rational& R);

/// u with norm(2u) >= 2r + R + 2 norm(x) + 2 norm(y); four r-conditions and
/// three R-conditions (2u, x-y+2u, x-y-2u).
Element pick_hyper_jensen_witness(const GroupDescriptor& g, const Element& x, const Element& y,
                                  const Rational& r, const Rational& R);

HyperCertificate certify_hyper_cauchy(const TestFunction& f, const HyperBudget& hb,
                                      const Element& x, const Element& y, const Rational& eps);

HyperCertificate certify_hyper_cauchy_with(const TestFunction& f, const HyperBudget& hb,
                                           const Element& x, const Element& y, const Rational& eps,
                                           const Element& u, const Element& v);

HyperCertificate certify_hyper_jensen(const TestFunction& f, const HyperBudget& hb,
                                      const Element& x, const Element& y, const Rational& eps);

HyperCertificate certify_hyper_jensen_with(const TestFunction& f, const HyperBudget& hb,
                                           const Element& x, const Element& y, const Rational& eps,
                                           const Element& u);

} // namespace stabkit
