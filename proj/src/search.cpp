#include "stabkit/search.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <random>

namespace stabkit {

namespace {

// f decomposed as additive-part + constant + finitely supported remainder:
// f(z) = additive(z) + constant + h(z). Both defect forms ignore the
// additive part, and the Jensen forms also ignore the constant.
struct Reduced {
    CodomainValue constant;
    std::map<Element, CodomainValue> h; // remainder on the override set
    CodomainValue zero;

    const CodomainValue& at(const Element& p) const {
        auto it = h.find(p);
        return it == h.end() ? zero : it->second;
    }
    bool special(const Element& p) const { return h.contains(p); }
};

CodomainValue additive_part(const TestFunction& f, const Element& x) {
    if (const auto* lin = std::get_if<BaseLinearScalar>(&f.base())) {
        Rational coord = x.group().id == GroupId::IntLattice ? Rational(x.int_coords()[0])
                                                             : x.dyadic_coords()[0].value();
        return CodomainValue(lin->slope * coord);
    }
    if (std::holds_alternative<BaseIdentity>(f.base()))
        return CodomainValue(x);
    return f.zero_value();
}

Reduced reduce(const TestFunction& f) {
    Reduced red{f.zero_value(), {}, f.zero_value()};
    if (const auto* c = std::get_if<BaseConstant>(&f.base()))
        red.constant = c->value;
    // Every override key stays in h, even where the remainder vanishes:
    // membership (not the value) drives the case split below.
    for (const auto& [p, value] : f.overrides())
        red.h.emplace(p, cv_sub(cv_sub(value, additive_part(f, p)), red.constant));
    return red;
}

} // namespace

Rational exact_shell_sup(const TestFunction& f, Equation eq, const Rational& r) {
    if (eq == Equation::JensenQuad)
        fail(ErrorCode::InvalidArgument, "shell sups use the plain equations");
    const GroupDescriptor& g = f.domain();
    if (eq == Equation::JensenPlain && !g.uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "Jensen asymptotics need a 2-divisible group");

    Reduced red = reduce(f);
    const auto& h = red.h;
    Rational sup = 0;
    auto offer = [&sup](Rational v) { sup = std::max(sup, std::move(v)); };

    std::vector<const Element*> far; // override points inside the shell
    for (const auto& [p, hp] : h)
        if (norm(p) >= r)
            far.push_back(&p);

    if (eq == Equation::Cauchy) {
        // Both arguments on the override set.
        for (const Element* x : far)
            for (const Element* y : far) {
                if (*y < *x)
                    continue;
                Element s = add(*x, *y);
                offer(cv_norm(
                    cv_sub(cv_sub(cv_sub(red.at(s), red.at(*x)), red.at(*y)), red.constant)));
            }
        // One argument on the set; the sum either on it or generic.
        for (const Element* x : far) {
            for (const auto& [s, hs] : h) {
                Element y = sub(s, *x);
                if (!red.special(y) && norm(y) >= r)
                    offer(cv_norm(cv_sub(cv_sub(hs, red.at(*x)), red.constant)));
            }
            offer(cv_norm(cv_add(red.at(*x), red.constant)));
        }
        // Both arguments generic: every override point is a reachable sum,
        // and generic sums leave the bare constant.
        for (const auto& [s, hs] : h)
            offer(cv_norm(cv_sub(hs, red.constant)));
        offer(cv_norm(red.constant));
        return sup;
    }

    // Plain Jensen. The constant cancels in 2f(m) - f(x) - f(y).
    for (const Element* x : far)
        for (const Element* y : far) {
            if (*y < *x)
                continue;
            Element m = halve(add(*x, *y));
            offer(cv_norm(cv_sub(cv_sub(cv_twice(red.at(m)), red.at(*x)), red.at(*y))));
        }
    for (const Element* x : far) {
        for (const auto& [m, hm] : h) {
            Element y = sub(twice(m), *x);
            if (!red.special(y) && norm(y) >= r)
                offer(cv_norm(cv_sub(cv_twice(hm), red.at(*x))));
        }
        offer(cv_norm(red.at(*x)));
    }
    for (const auto& [m, hm] : h)
        offer(cv_norm(cv_twice(hm)));
    return sup;
}

Rational exact_limsup(const TestFunction& f, Equation eq) {
    if (eq == Equation::JensenQuad)
        fail(ErrorCode::InvalidArgument, "asymptotics use the plain equations");
    if (eq == Equation::JensenPlain && !f.domain().uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "Jensen asymptotics need a 2-divisible group");

    // Only the generic-generic cases of exact_shell_sup survive as r grows.
    Reduced red = reduce(f);
    Rational sup = eq == Equation::Cauchy ? cv_norm(red.constant) : Rational(0);
    for (const auto& [p, hp] : red.h) {
        Rational v = eq == Equation::Cauchy ? cv_norm(cv_sub(hp, red.constant))
                                            : cv_norm(cv_twice(hp));
        sup = std::max(sup, v);
    }
    return sup;
}

namespace {

std::vector<Rational> value_grid(const Rational& lo, const Rational& hi, const Rational& step) {
    if (step <= 0)
        fail(ErrorCode::InvalidArgument, "grid step must be positive");
    std::vector<Rational> out;
    for (Rational v = lo; v <= hi; v += step)
        out.push_back(v);
    return out;
}

// Window pair (i <= j) with its sum (Cauchy) or midpoint (Jensen) resolved
// against the window up front, so objective evaluation is pure arithmetic.
struct ObjectivePair {
    std::size_t i;
    std::size_t j;
    std::optional<std::size_t> key_idx; // index of sum/midpoint if in window
};

struct SearchSpace {
    Equation objective;  // Cauchy or JensenQuad
    Equation constraint; // Cauchy or JensenPlain
    Rational eps;
    Rational shell_r;
    std::vector<Element> points;
    std::vector<Rational> grid;
    std::vector<ObjectivePair> pairs;

    void build_pairs() {
        std::map<Element, std::size_t> index;
        for (std::size_t i = 0; i < points.size(); ++i)
            index.emplace(points[i], i);
        bool midpoint = objective == Equation::JensenQuad;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i; j < points.size(); ++j) {
                Element key = add(points[i], points[j]);
                if (midpoint)
                    key = halve(key);
                auto it = index.find(key);
                pairs.push_back({i, j,
                                 it == index.end() ? std::nullopt
                                                   : std::optional<std::size_t>(it->second)});
            }
    }

    // Max objective defect over window pairs for values[] with the given
    // base filling everything outside the window.
    Rational objective_sup(const std::vector<Rational>& values, const Rational& base) const {
        Rational best = 0;
        for (const auto& p : pairs) {
            const Rational& fkey = p.key_idx ? values[*p.key_idx] : base;
            Rational d = objective == Equation::Cauchy
                             ? Rational(fkey - values[p.i] - values[p.j])
                             : Rational(4 * fkey - 2 * values[p.i] - 2 * values[p.j]);
            if (d < 0)
                d = -d;
            if (d > best)
                best = d;
        }
        return best;
    }
};

TestFunction assemble(const GroupDescriptor& g, const Rational& base,
                      const std::vector<Element>& points, const std::vector<Rational>& values) {
    TestFunction::OverrideMap map;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (values[i] != base)
            map.emplace(points[i], CodomainValue(values[i]));
    BaseRule rule = base == 0 ? BaseRule(BaseZero{}) : BaseRule(BaseConstant{CodomainValue(base)});
    return TestFunction(g, CodomainKind::Scalar, std::move(rule), std::move(map));
}

bool feasible(const TestFunction& f, const SearchSpace& space) {
    return exact_shell_sup(f, space.constraint, space.shell_r) <= space.eps;
}

struct Tracker {
    std::optional<TestFunction> best;
    Rational best_sup = -1;
    std::uint64_t tried = 0;
};

void exhaustive_search(const GroupDescriptor& g, const SearchSpace& space, unsigned max_support,
                       Tracker& tracker) {
    // Base constants that can pass the always-active asymptotic constraints:
    // far generic Cauchy pairs force |c| <= eps; the Jensen forms ignore the
    // constant entirely, so base 0 loses nothing there.
    std::vector<Rational> bases;
    if (space.constraint == Equation::Cauchy) {
        for (const auto& c : space.grid)
            if (rat_abs(c) <= space.eps)
                bases.push_back(c);
        if (bases.empty())
            bases.push_back(0);
    } else {
        bases.push_back(0);
    }

    const std::size_t n = space.points.size();
    std::vector<Rational> values(n);

    for (const Rational& c : bases) {
        // Values an override can take without violating the reachable-sum
        // (reachable-midpoint) necessity condition.
        std::vector<Rational> candidates;
        for (const auto& v : space.grid) {
            bool ok = space.constraint == Equation::Cauchy ? rat_abs(v - 2 * c) <= space.eps
                                                           : 2 * rat_abs(v - c) <= space.eps;
            if (ok)
                candidates.push_back(v);
        }

        std::fill(values.begin(), values.end(), c);
        std::vector<std::size_t> support;

        auto evaluate = [&]() {
            ++tracker.tried;
            TestFunction f = assemble(g, c, space.points, values);
            if (!feasible(f, space))
                return;
            Rational sup = space.objective_sup(values, c);
            if (!tracker.best || sup > tracker.best_sup) {
                tracker.best = std::move(f);
                tracker.best_sup = std::move(sup);
            }
        };

        auto assign_values = [&](auto&& self, std::size_t slot) -> void {
            if (slot == support.size()) {
                evaluate();
                return;
            }
            for (const auto& v : candidates) {
                values[support[slot]] = v;
                self(self, slot + 1);
            }
            values[support[slot]] = c;
        };

        auto extend_support = [&](auto&& self, std::size_t start, unsigned remaining) -> void {
            if (remaining == 0)
                return;
            for (std::size_t i = start; i < n; ++i) {
                support.push_back(i);
                assign_values(assign_values, 0);
                self(self, i + 1, remaining - 1);
                support.pop_back();
            }
        };

        evaluate(); // bare constant
        extend_support(extend_support, 0, max_support);
    }
}

void hill_climb(const GroupDescriptor& g, const SearchSpace& space, const SearchConfig& config,
                Tracker& tracker) {
    std::mt19937_64 rng(config.seed);
    const std::size_t n = space.points.size();
    std::uniform_int_distribution<std::size_t> slot_dist(0, n); // slot n is the base
    std::uniform_int_distribution<std::size_t> value_dist(0, space.grid.size() - 1);

    for (unsigned restart = 0; restart <= config.restarts; ++restart) {
        Rational base = 0;
        std::vector<Rational> values(n, base);
        Rational current = 0;
        {
            ++tracker.tried;
            TestFunction f = assemble(g, base, space.points, values);
            current = space.objective_sup(values, base);
            if (!tracker.best || current > tracker.best_sup) {
                tracker.best = std::move(f);
                tracker.best_sup = current;
            }
        }

        for (unsigned it = 0; it < config.iterations; ++it) {
            std::size_t slot = slot_dist(rng);
            Rational proposal = space.grid[value_dist(rng)];
            Rational saved = slot < n ? values[slot] : base;
            if (slot < n)
                values[slot] = proposal;
            else
                base = proposal;
            ++tracker.tried;
            TestFunction f = assemble(g, base, space.points, values);
            bool accepted = false;
            if (feasible(f, space)) {
                Rational sup = space.objective_sup(values, base);
                if (sup >= current) {
                    accepted = true;
                    current = sup;
                    if (!tracker.best || sup > tracker.best_sup) {
                        tracker.best = std::move(f);
                        tracker.best_sup = std::move(sup);
                    }
                }
            }
            if (!accepted) {
                if (slot < n)
                    values[slot] = saved;
                else
                    base = saved;
            }
        }
    }
}

} // namespace

SearchResult adversarial_sharpness_search(const GroupDescriptor& g, Equation equation,
                                          const Rational& eps, const Window& window,
                                          const Rational& shell_r, const SearchConfig& config) {
    if (eps < 0)
        fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
    if (shell_r <= 0)
        fail(ErrorCode::InvalidArgument, "shell radius must be positive");
    if (equation == Equation::JensenPlain)
        fail(ErrorCode::InvalidArgument, "search objectives are Cauchy or JensenQuad");

    SearchSpace space;
    space.objective = equation;
    space.constraint = equation == Equation::Cauchy ? Equation::Cauchy : Equation::JensenPlain;
    space.eps = eps;
    space.shell_r = shell_r;
    space.points = enumerate_window(g, window);
    if (space.points.empty())
        fail(ErrorCode::EmptyWindow, "search window has no elements");
    if (space.constraint == Equation::JensenPlain && !g.uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "Jensen search needs a 2-divisible group");

    Rational radius = 0;
    for (const auto& p : space.points)
        radius = std::max(radius, norm(p));
    if (shell_r > radius)
        fail(ErrorCode::InvalidArgument, "shell radius exceeds the window radius");

    Rational lo = config.grid_min.value_or(-3 * eps);
    Rational hi = config.grid_max.value_or(3 * eps);
    Rational step = config.grid_step.value_or(eps > 0 ? eps / 2 : Rational(1));
    space.grid = value_grid(lo, hi, step);
    space.build_pairs();

    bool run_exhaustive = config.mode == SearchConfig::Mode::Exhaustive ||
                          (config.mode == SearchConfig::Mode::Auto &&
                           space.points.size() <= 20 && config.max_support <= 3);

    Tracker tracker;
    if (run_exhaustive)
        exhaustive_search(g, space, config.max_support, tracker);
    else
        hill_climb(g, space, config, tracker);

    if (!tracker.best)
        fail(ErrorCode::InfeasibleSearch, "no feasible function found");

    Rational ceiling = (equation == Equation::Cauchy ? 5 : 4) * eps;
    if (tracker.best_sup > ceiling)
        fail(ErrorCode::InvariantViolation,
             "search exceeded the theorem ceiling: " + format_rational(tracker.best_sup) + " > " +
                 format_rational(ceiling));

    return {std::move(*tracker.best), std::move(tracker.best_sup), equation, tracker.tried,
            run_exhaustive};
}

} // namespace stabkit
