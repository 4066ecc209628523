#include "stabkit/functions.hpp"

#include "stabkit/error.hpp"

namespace stabkit {

const Rational& CodomainValue::scalar() const {
    if (!is_scalar())
        fail(ErrorCode::CodomainMismatch, "expected a scalar codomain value");
    return std::get<Rational>(value_);
}

const Element& CodomainValue::element() const {
    if (is_scalar())
        fail(ErrorCode::CodomainMismatch, "expected a group codomain value");
    return std::get<Element>(value_);
}

bool operator==(const CodomainValue& a, const CodomainValue& b) {
    if (a.is_scalar() != b.is_scalar())
        return false;
    return a.is_scalar() ? a.scalar() == b.scalar() : a.element() == b.element();
}

CodomainValue cv_add(const CodomainValue& a, const CodomainValue& b) {
    if (a.is_scalar() != b.is_scalar())
        fail(ErrorCode::CodomainMismatch, "cannot add scalar and group values");
    if (a.is_scalar())
        return CodomainValue(a.scalar() + b.scalar());
    return CodomainValue(add(a.element(), b.element()));
}

CodomainValue cv_negate(const CodomainValue& a) {
    if (a.is_scalar())
        return CodomainValue(Rational(-a.scalar()));
    return CodomainValue(negate(a.element()));
}

CodomainValue cv_sub(const CodomainValue& a, const CodomainValue& b) {
    return cv_add(a, cv_negate(b));
}

CodomainValue cv_twice(const CodomainValue& a) {
    return cv_add(a, a);
}

Rational cv_norm(const CodomainValue& a) {
    return a.is_scalar() ? rat_abs(a.scalar()) : norm(a.element());
}

TestFunction::TestFunction(GroupDescriptor domain, CodomainKind codomain, BaseRule base,
                           OverrideMap overrides)
    : domain_(domain), codomain_(codomain), base_(std::move(base)), overrides_(std::move(overrides)) {
    if (std::holds_alternative<BaseLinearScalar>(base_)) {
        if (domain_.id == GroupId::BinarySeq || domain_.dim != 1)
            fail(ErrorCode::UnsupportedDomain, "linear base needs a dim-1 lattice domain");
        if (codomain_ != CodomainKind::Scalar)
            fail(ErrorCode::CodomainMismatch, "linear base has a scalar codomain");
    }
    if (std::holds_alternative<BaseIdentity>(base_) && codomain_ != CodomainKind::SameGroup)
        fail(ErrorCode::CodomainMismatch, "identity base has a group codomain");
    if (const auto* c = std::get_if<BaseConstant>(&base_)) {
        bool scalar = c->value.is_scalar();
        if (scalar != (codomain_ == CodomainKind::Scalar))
            fail(ErrorCode::CodomainMismatch, "constant base value disagrees with codomain kind");
        if (!scalar && !(c->value.element().group() == domain_))
            fail(ErrorCode::GroupMismatch, "group-valued constant must live in the domain group");
    }
    for (const auto& [key, value] : overrides_) {
        if (!(key.group() == domain_))
            fail(ErrorCode::GroupMismatch, "override point outside the domain");
        if (value.is_scalar() != (codomain_ == CodomainKind::Scalar))
            fail(ErrorCode::CodomainMismatch, "override value disagrees with codomain kind");
        if (!value.is_scalar() && !(value.element().group() == domain_))
            fail(ErrorCode::GroupMismatch, "override value outside the codomain group");
    }
}

CodomainValue TestFunction::zero_value() const {
    if (codomain_ == CodomainKind::Scalar)
        return CodomainValue(Rational(0));
    return CodomainValue(zero(domain_));
}

bool TestFunction::base_is_additive() const {
    if (const auto* c = std::get_if<BaseConstant>(&base_))
        return cv_norm(c->value) == 0;
    return true;
}

namespace {

Rational scalar_coordinate(const Element& x) {
    switch (x.group().id) {
    case GroupId::IntLattice:
        return Rational(x.int_coords()[0]);
    case GroupId::DyadicLattice:
        return x.dyadic_coords()[0].value();
    case GroupId::BinarySeq:
        break;
    }
    fail(ErrorCode::UnsupportedDomain, "no scalar coordinate on this group");
}

} // namespace

CodomainValue eval(const TestFunction& f, const Element& x) {
    if (!(x.group() == f.domain()))
        fail(ErrorCode::GroupMismatch, "argument outside the function's domain");
    if (auto it = f.overrides().find(x); it != f.overrides().end())
        return it->second;
    return std::visit(
        [&](const auto& base) -> CodomainValue {
            using T = std::decay_t<decltype(base)>;
            if constexpr (std::is_same_v<T, BaseZero>)
                return f.zero_value();
            else if constexpr (std::is_same_v<T, BaseConstant>)
                return base.value;
            else if constexpr (std::is_same_v<T, BaseLinearScalar>)
                return CodomainValue(base.slope * scalar_coordinate(x));
            else
                return CodomainValue(x);
        },
        f.base());
}

TestFunction make_extremal_cauchy(const Rational& eps, const Element& x0) {
    if (eps < 0)
        fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
    if (x0.is_zero())
        fail(ErrorCode::ZeroExcluded, "the bumped point must be nonzero");
    TestFunction::OverrideMap overrides;
    overrides.emplace(x0, CodomainValue(Rational(3 * eps)));
    return TestFunction(x0.group(), CodomainKind::Scalar,
                        BaseConstant{CodomainValue(eps)}, std::move(overrides));
}

TestFunction make_extremal_jensen(const Rational& eps, const Element& x0) {
    if (eps < 0)
        fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
    if (x0.is_zero())
        fail(ErrorCode::ZeroExcluded, "the dipped points must be nonzero");
    if (!x0.group().uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "Jensen extremal needs a 2-divisible domain");
    TestFunction::OverrideMap overrides;
    Rational half_eps = eps / 2;
    overrides.emplace(x0, CodomainValue(Rational(-half_eps)));
    overrides.emplace(negate(x0), CodomainValue(Rational(-half_eps)));
    overrides.insert_or_assign(zero(x0.group()), CodomainValue(half_eps));
    return TestFunction(x0.group(), CodomainKind::Scalar, BaseZero{}, std::move(overrides));
}

TestFunction make_hyper_counterexample(const Element& a) {
    if (a.is_zero())
        fail(ErrorCode::ZeroExcluded, "the value at zero must be nonzero");
    TestFunction::OverrideMap overrides;
    overrides.emplace(zero(a.group()), CodomainValue(a));
    return TestFunction(a.group(), CodomainKind::SameGroup, BaseIdentity{}, std::move(overrides));
}

TestFunction make_additive(const Rational& slope, const GroupDescriptor& g) {
    return TestFunction(g, CodomainKind::Scalar, BaseLinearScalar{slope});
}

TestFunction make_zero(const GroupDescriptor& g, CodomainKind codomain) {
    return TestFunction(g, codomain, BaseZero{});
}

TestFunction make_constant(const GroupDescriptor& g, CodomainValue value) {
    CodomainKind kind = value.is_scalar() ? CodomainKind::Scalar : CodomainKind::SameGroup;
    return TestFunction(g, kind, BaseConstant{std::move(value)});
}

TestFunction make_identity(const GroupDescriptor& g) {
    return TestFunction(g, CodomainKind::SameGroup, BaseIdentity{});
}

TestFunction perturb(const TestFunction& f, const TestFunction::OverrideMap& extra) {
    TestFunction::OverrideMap merged = f.overrides();
    for (const auto& [key, value] : extra)
        merged.insert_or_assign(key, value);
    return TestFunction(f.domain(), f.codomain(), f.base(), std::move(merged));
}

} // namespace stabkit
