#include "stabkit/weight.hpp"

#include "stabkit/error.hpp"

namespace stabkit {

WeightFunction WeightFunction::linear() {
    return {Kind::Linear, 0, 1};
}

WeightFunction WeightFunction::quadratic() {
    return {Kind::Quadratic, 0, 1};
}

WeightFunction WeightFunction::affine_floor(Rational c0, Rational slope) {
    if (slope <= 0)
        fail(ErrorCode::InvalidArgument, "affine weight needs a positive slope");
    return {Kind::AffineFloor, std::move(c0), std::move(slope)};
}

Rational WeightFunction::eval(const Rational& t) const {
    if (t < 0)
        fail(ErrorCode::InvalidArgument, "weights are defined on [0, inf)");
    switch (kind_) {
    case Kind::Linear:
        return t;
    case Kind::Quadratic:
        return t * t;
    case Kind::AffineFloor:
        return std::max(c0_, Rational(slope_ * t));
    }
    fail(ErrorCode::InvalidArgument, "unknown weight kind");
}

Rational WeightFunction::threshold_inverse(const Rational& c) const {
    switch (kind_) {
    case Kind::Linear:
        return std::max(c, Rational(0));
    case Kind::Quadratic:
        return Rational(ceil_sqrt(c));
    case Kind::AffineFloor:
        if (c <= c0_)
            return 0;
        return c / slope_;
    }
    fail(ErrorCode::InvalidArgument, "unknown weight kind");
}

} // namespace stabkit
