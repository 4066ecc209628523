#pragma once

#include "stabkit/rational.hpp"

#include <cstdint>

namespace stabkit {

/// A weight phi : [0, inf) -> Q that grows without bound, together with the
/// inverse threshold the hyperstability argument needs: threshold_inverse(c)
/// returns R with phi(t) >= c for every t >= R. R need not be minimal, only
/// correct; Quadratic rounds up to an integer square root to stay rational.
class WeightFunction {
public:
    enum class Kind : std::uint8_t { Linear, Quadratic, AffineFloor };

    static WeightFunction linear();
    static WeightFunction quadratic();
    // phi(t) = max(c0, slope * t), slope > 0.
    static WeightFunction affine_floor(Rational c0, Rational slope);

    Kind kind() const { return kind_; }
    const Rational& c0() const { return c0_; }
    const Rational& slope() const { return slope_; }

    Rational eval(const Rational& t) const;
    Rational threshold_inverse(const Rational& c) const;

private:
    WeightFunction(Kind kind, Rational c0, Rational slope)
        : kind_(kind), c0_(std::move(c0)), slope_(std::move(slope)) {}

    Kind kind_;
    Rational c0_;
    Rational slope_;
};

} // namespace stabkit
