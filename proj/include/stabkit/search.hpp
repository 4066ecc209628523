#pragma once

#include "stabkit/defect.hpp"

#include <cstdint>

namespace stabkit {

/// Exact sup of the plain defect over ALL pairs of the group (not just a
/// window) with min(norm x, norm y) >= r. Computable in closed form because
/// a base-plus-finite-overrides function deviates from an additive-plus-
/// constant rule only on its override set: every far pair's defect is
/// determined by which of x, y, x+y (resp. the midpoint) land on that set.
/// eq must be Cauchy or JensenPlain.
Rational exact_shell_sup(const TestFunction& f, Equation eq, const Rational& r);

/// Limit of exact_shell_sup as r grows: the function's true asymptotic
/// defect bound. Equals exact_shell_sup for any r beyond the override norms.
Rational exact_limsup(const TestFunction& f, Equation eq);

struct SearchConfig {
    // Override values are drawn from {grid_min, grid_min+step, ..., grid_max}.
    // Unset (empty) grid defaults to [-3 eps, 3 eps] in steps of eps/2.
    std::optional<Rational> grid_min;
    std::optional<Rational> grid_max;
    std::optional<Rational> grid_step;
    unsigned max_support = 3; // exhaustive mode: overrides per candidate

    enum class Mode : std::uint8_t { Auto, Exhaustive, HillClimb };
    Mode mode = Mode::Auto;

    unsigned restarts = 4;  // hill-climb
    unsigned iterations = 400;
    std::uint64_t seed = 0;
};

struct SearchResult {
    TestFunction best;
    Rational best_sup;  // max objective defect over window pairs
    Equation objective; // Cauchy or JensenQuad
    std::uint64_t candidates_tried;
    bool exhaustive; // which mode produced the result
};

/// Searches constant-base-plus-overrides functions on the window for the
/// largest window defect subject to the exact feasibility constraint
/// exact_shell_sup(f, plain equation, r) <= eps. Feasibility over the whole
/// group (not the window) keeps the stability theorems applicable, so the
/// result can never exceed 5 eps (Cauchy) or 4 eps (JensenQuad); the engine
/// re-checks that ceiling and refuses to return a violation.
///
/// equation selects the objective: Cauchy, or JensenQuad (whose feasibility
/// constraint is the plain Jensen defect, matching the stability premise).
SearchResult adversarial_sharpness_search(const GroupDescriptor& g, Equation equation,
                                          const Rational& eps, const Window& window,
                                          const Rational& shell_r,
                                          const SearchConfig& config = {});

} // namespace stabkit
