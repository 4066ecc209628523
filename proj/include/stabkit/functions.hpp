#pragma once

#include "stabkit/groups.hpp"

#include <map>
#include <variant>

namespace stabkit {

/// A codomain value: either a rational scalar (normed by absolute value) or
/// an element of the domain group (normed by the group norm, for f : X -> X).
class CodomainValue {
public:
    CodomainValue(Rational scalar) : value_(std::move(scalar)) {}
    CodomainValue(Element element) : value_(std::move(element)) {}

    bool is_scalar() const { return std::holds_alternative<Rational>(value_); }
    const Rational& scalar() const;
    const Element& element() const;

    friend bool operator==(const CodomainValue& a, const CodomainValue& b);

private:
    std::variant<Rational, Element> value_;
};

CodomainValue cv_add(const CodomainValue& a, const CodomainValue& b);
CodomainValue cv_negate(const CodomainValue& a);
CodomainValue cv_sub(const CodomainValue& a, const CodomainValue& b);
CodomainValue cv_twice(const CodomainValue& a);
Rational cv_norm(const CodomainValue& a);

enum class CodomainKind : std::uint8_t { Scalar, SameGroup };

struct BaseZero {};
struct BaseConstant {
    CodomainValue value;
};
struct BaseLinearScalar {
    Rational slope; // f(x) = slope * x on dim-1 lattices
};
struct BaseIdentity {};

using BaseRule = std::variant<BaseZero, BaseConstant, BaseLinearScalar, BaseIdentity>;

/// f : X -> Y as a base rule plus a finite override map. Overrides win;
/// the base rule answers everywhere else. Immutable after construction,
/// so values are freely shareable.
class TestFunction {
public:
    using OverrideMap = std::map<Element, CodomainValue>;

    TestFunction(GroupDescriptor domain, CodomainKind codomain, BaseRule base,
                 OverrideMap overrides = {});

    const GroupDescriptor& domain() const { return domain_; }
    CodomainKind codomain() const { return codomain_; }
    const BaseRule& base() const { return base_; }
    const OverrideMap& overrides() const { return overrides_; }

    CodomainValue zero_value() const; // the codomain's zero

    /// True when the base rule alone is exactly additive (Zero, LinearScalar,
    /// Identity, but not a nonzero Constant).
    bool base_is_additive() const;

private:
    GroupDescriptor domain_;
    CodomainKind codomain_;
    BaseRule base_;
    OverrideMap overrides_;
};

CodomainValue eval(const TestFunction& f, const Element& x);

/// Constant eps off x0, 3*eps at x0 (x0 != 0). The direct-sum witness that
/// the asymptotic Cauchy bound cannot beat five times the shell defect.
TestFunction make_extremal_cauchy(const Rational& eps, const Element& x0);

/// 0 off {x0, -x0, 0}, -eps/2 on {x0, -x0}, +eps/2 at 0. The analogous
/// witness for the quadrupled Jensen bound; needs a 2-divisible domain.
TestFunction make_extremal_jensen(const Rational& eps, const Element& x0);

/// Identity except f(0) = a with a != 0. Group-valued; the non-additive
/// function whose weighted defect stays bounded when 2X is bounded.
TestFunction make_hyper_counterexample(const Element& a);

/// f(x) = slope * x on a dim-1 lattice; an exact Cauchy/Jensen solution.
TestFunction make_additive(const Rational& slope, const GroupDescriptor& g);

TestFunction make_zero(const GroupDescriptor& g, CodomainKind codomain = CodomainKind::Scalar);
TestFunction make_constant(const GroupDescriptor& g, CodomainValue value);
TestFunction make_identity(const GroupDescriptor& g);

/// Copy of f with extra overrides merged in; extra wins on collisions.
TestFunction perturb(const TestFunction& f, const TestFunction::OverrideMap& extra);

} // namespace stabkit
