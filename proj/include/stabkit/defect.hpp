#pragma once

#include "stabkit/functions.hpp"
#include "stabkit/weight.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stabkit {

enum class Equation : std::uint8_t { Cauchy, JensenPlain, JensenQuad };

const char* to_string(Equation eq);
Equation parse_equation(const std::string& text);

/// norm(f(x+y) - f(x) - f(y))
Rational cauchy_defect(const TestFunction& f, const Element& x, const Element& y);

/// norm(2 f((x+y)/2) - f(x) - f(y)); needs a 2-divisible domain.
Rational jensen_defect(const TestFunction& f, const Element& x, const Element& y);

/// norm(4 f((x+y)/2) - 2 f(x) - 2 f(y)); the division-free Jensen form.
Rational jensen_quad_defect(const TestFunction& f, const Element& x, const Element& y);

Rational defect(Equation eq, const TestFunction& f, const Element& x, const Element& y);

/// phi(norm(x - y)) times the plain defect of the equation.
Rational weighted_defect(const TestFunction& f, const WeightFunction& phi, const Element& x,
                         const Element& y, Equation eq);

struct PairSample {
    Element x;
    Element y;
    Rational defect;
    Rational min_norm; // min(norm(x), norm(y)), the asymptotic filter variable
};

/// Evaluates one quantified pair: the defect plus the min-norm filter value.
PairSample make_pair_sample(const TestFunction& f, Equation eq, Element x, Element y);

/// Finite enumeration of domain elements. Lattices take a symmetric box of
/// step multiples per axis; BinarySeq takes every support inside {1..n}.
struct LatticeBox {
    Rational lo;
    Rational hi;
    Rational step = 1;
};
struct SupportUniverse {
    unsigned max_index = 0;
};

struct Window {
    std::variant<LatticeBox, SupportUniverse> spec;

    static Window box(Rational lo, Rational hi, Rational step = 1);
    static Window symmetric(Rational radius, Rational step = 1);
    static Window supports(unsigned max_index);

    std::string describe() const;
};

std::vector<Element> enumerate_window(const GroupDescriptor& g, const Window& w);

/// Largest element norm in the window (the window radius).
Rational window_radius(const GroupDescriptor& g, const Window& w);

struct ShellEntry {
    Rational r;
    Rational sup; // max defect over window pairs with min_norm >= r; 0 if none
    std::optional<std::pair<Element, Element>> argmax;
};

struct ScanReport {
    Equation equation;
    std::string window;
    std::optional<WeightFunction> weight; // set for weighted profiles
    Rational max_defect;
    std::optional<std::pair<Element, Element>> argmax;
    std::vector<ShellEntry> shells;
};

/// Exact max defect over all ordered window pairs, plus per-shell sups for
/// each r in shell_grid. Shell values are sups over the window only: lower
/// bounds for the group-wide shell sups. Ties on the max pick the pair whose
/// serialized form sorts last. jobs > 1 shards the scan; results are
/// byte-identical to the single-threaded run.
ScanReport sup_defect_scan(const TestFunction& f, Equation eq, const Window& window,
                           const std::vector<Rational>& shell_grid, unsigned jobs = 1);

/// Same scan with each defect multiplied by phi(norm(x - y)).
ScanReport weighted_profile(const TestFunction& f, const WeightFunction& phi, Equation eq,
                            const Window& window, const std::vector<Rational>& shell_grid,
                            unsigned jobs = 1);

} // namespace stabkit
