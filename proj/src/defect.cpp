#include "stabkit/defect.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <thread>

namespace stabkit {

const char* to_string(Equation eq) {
    switch (eq) {
    case Equation::Cauchy: return "cauchy";
    case Equation::JensenPlain: return "jensen";
    case Equation::JensenQuad: return "jensen-quad";
    }
    return "unknown";
}

Equation parse_equation(const std::string& text) {
    if (text == "cauchy")
        return Equation::Cauchy;
    if (text == "jensen")
        return Equation::JensenPlain;
    if (text == "jensen-quad")
        return Equation::JensenQuad;
    fail(ErrorCode::ParseError, "unknown equation '" + text + "'");
}

Rational cauchy_defect(const TestFunction& f, const Element& x, const Element& y) {
    CodomainValue lhs = eval(f, add(x, y));
    return cv_norm(cv_sub(cv_sub(lhs, eval(f, x)), eval(f, y)));
}

Rational jensen_defect(const TestFunction& f, const Element& x, const Element& y) {
    CodomainValue mid = eval(f, halve(add(x, y)));
    return cv_norm(cv_sub(cv_sub(cv_twice(mid), eval(f, x)), eval(f, y)));
}

Rational jensen_quad_defect(const TestFunction& f, const Element& x, const Element& y) {
    CodomainValue mid = eval(f, halve(add(x, y)));
    CodomainValue quad = cv_twice(cv_twice(mid));
    return cv_norm(cv_sub(cv_sub(quad, cv_twice(eval(f, x))), cv_twice(eval(f, y))));
}

Rational defect(Equation eq, const TestFunction& f, const Element& x, const Element& y) {
    switch (eq) {
    case Equation::Cauchy:
        return cauchy_defect(f, x, y);
    case Equation::JensenPlain:
        return jensen_defect(f, x, y);
    case Equation::JensenQuad:
        return jensen_quad_defect(f, x, y);
    }
    fail(ErrorCode::InvalidArgument, "unknown equation");
}

Rational weighted_defect(const TestFunction& f, const WeightFunction& phi, const Element& x,
                         const Element& y, Equation eq) {
    return phi.eval(distance(x, y)) * defect(eq, f, x, y);
}

PairSample make_pair_sample(const TestFunction& f, Equation eq, Element x, Element y) {
    Rational d = defect(eq, f, x, y);
    Rational mn = std::min(norm(x), norm(y));
    return {std::move(x), std::move(y), std::move(d), std::move(mn)};
}

Window Window::box(Rational lo, Rational hi, Rational step) {
    return Window{LatticeBox{std::move(lo), std::move(hi), std::move(step)}};
}

Window Window::symmetric(Rational radius, Rational step) {
    return Window{LatticeBox{-radius, radius, std::move(step)}};
}

Window Window::supports(unsigned max_index) {
    return Window{SupportUniverse{max_index}};
}

std::string Window::describe() const {
    if (const auto* box = std::get_if<LatticeBox>(&spec)) {
        std::string s = "[" + format_rational(box->lo) + "," + format_rational(box->hi) + "]";
        if (box->step != 1)
            s += " step " + format_rational(box->step);
        return s;
    }
    const auto& u = std::get<SupportUniverse>(spec);
    return "supports within {1.." + std::to_string(u.max_index) + "}";
}

namespace {

constexpr std::size_t kMaxWindowElements = 1u << 20;

std::vector<Rational> axis_values(const LatticeBox& box) {
    if (box.step <= 0)
        fail(ErrorCode::InvalidArgument, "window step must be positive");
    if (box.lo > box.hi)
        fail(ErrorCode::EmptyWindow, "window range is empty");
    Int k = rat_ceil(box.lo / box.step);
    Int last = rat_floor(box.hi / box.step);
    std::vector<Rational> out;
    for (; k <= last; ++k)
        out.push_back(Rational(k) * box.step);
    return out;
}

} // namespace

std::vector<Element> enumerate_window(const GroupDescriptor& g, const Window& w) {
    std::vector<Element> out;
    if (const auto* box = std::get_if<LatticeBox>(&w.spec)) {
        if (g.id == GroupId::BinarySeq)
            fail(ErrorCode::InvalidArgument, "BinarySeq windows enumerate supports, not boxes");
        auto axis = axis_values(*box);
        if (axis.empty())
            fail(ErrorCode::EmptyWindow, "no step multiples inside the window");
        std::size_t total = 1;
        for (unsigned d = 0; d < g.dim; ++d) {
            total *= axis.size();
            if (total > kMaxWindowElements)
                fail(ErrorCode::InvalidArgument, "window enumerates too many elements");
        }
        std::vector<std::size_t> idx(g.dim, 0);
        for (std::size_t n = 0; n < total; ++n) {
            if (g.id == GroupId::IntLattice) {
                IntVector v;
                v.reserve(g.dim);
                for (unsigned d = 0; d < g.dim; ++d) {
                    const Rational& q = axis[idx[d]];
                    if (denominator(q) != 1)
                        fail(ErrorCode::InvalidArgument,
                             "integer lattice window needs integer steps");
                    v.push_back(numerator(q));
                }
                out.emplace_back(g, std::move(v));
            } else {
                DyadicVector v;
                v.reserve(g.dim);
                for (unsigned d = 0; d < g.dim; ++d) {
                    const Rational& q = axis[idx[d]];
                    Int den = denominator(q);
                    unsigned e = 0;
                    while (den % 2 == 0) {
                        den /= 2;
                        ++e;
                    }
                    if (den != 1)
                        fail(ErrorCode::InvalidArgument, "dyadic window needs dyadic steps");
                    v.push_back(Dyadic::normalized(numerator(q), e));
                }
                out.emplace_back(g, std::move(v));
            }
            for (unsigned d = 0; d < g.dim; ++d) {
                if (++idx[d] < axis.size())
                    break;
                idx[d] = 0;
            }
        }
        return out;
    }
    const auto& u = std::get<SupportUniverse>(w.spec);
    if (g.id != GroupId::BinarySeq)
        fail(ErrorCode::InvalidArgument, "support windows require BinarySeq");
    if (u.max_index > 16)
        fail(ErrorCode::InvalidArgument, "support window limited to indices 1..16");
    std::size_t total = std::size_t(1) << u.max_index;
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
        BitSupport s;
        for (unsigned i = 0; i < u.max_index; ++i)
            if (mask & (std::size_t(1) << i))
                s.insert(i + 1);
        out.emplace_back(g, std::move(s));
    }
    return out;
}

Rational window_radius(const GroupDescriptor& g, const Window& w) {
    auto elems = enumerate_window(g, w);
    Rational radius = 0;
    for (const auto& e : elems)
        radius = std::max(radius, norm(e));
    return radius;
}

namespace {

struct BestPair {
    Rational value = 0;
    std::optional<std::pair<Element, Element>> at;

    // Keeps the lexicographically last serialized pair among ties, so merges
    // are order-independent.
    void offer(const Rational& v, const Element& x, const Element& y) {
        if (!at || v > value) {
            value = v;
            at = {x, y};
            return;
        }
        if (v < value)
            return;
        auto key = std::pair(to_text(x), to_text(y));
        auto cur = std::pair(to_text(at->first), to_text(at->second));
        if (key > cur)
            at = {x, y};
    }

    void merge(const BestPair& other) {
        if (!other.at)
            return;
        offer(other.value, other.at->first, other.at->second);
    }
};

ScanReport run_scan(const TestFunction& f, Equation eq, const Window& window,
                    const std::vector<Rational>& shell_grid,
                    const std::optional<WeightFunction>& phi, unsigned jobs) {
    auto elems = enumerate_window(f.domain(), window);
    if (elems.empty())
        fail(ErrorCode::EmptyWindow, "window has no elements");

    std::vector<Rational> grid = shell_grid;
    std::sort(grid.begin(), grid.end());

    struct Shard {
        BestPair global;
        std::vector<BestPair> shells;
    };

    jobs = std::max(1u, jobs);
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(elems.size()));
    std::vector<Shard> shards(jobs);
    for (auto& s : shards)
        s.shells.resize(grid.size());

    auto work = [&](unsigned shard_idx) {
        Shard& shard = shards[shard_idx];
        for (std::size_t i = shard_idx; i < elems.size(); i += jobs) {
            for (std::size_t j = 0; j < elems.size(); ++j) {
                PairSample sample = make_pair_sample(f, eq, elems[i], elems[j]);
                if (phi)
                    sample.defect *= phi->eval(distance(sample.x, sample.y));
                shard.global.offer(sample.defect, sample.x, sample.y);
                for (std::size_t k = 0; k < grid.size() && grid[k] <= sample.min_norm; ++k)
                    shard.shells[k].offer(sample.defect, sample.x, sample.y);
            }
        }
    };

    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t)
            threads.emplace_back(work, t);
        for (auto& t : threads)
            t.join();
    }

    Shard merged;
    merged.shells.resize(grid.size());
    for (const auto& s : shards) {
        merged.global.merge(s.global);
        for (std::size_t k = 0; k < grid.size(); ++k)
            merged.shells[k].merge(s.shells[k]);
    }

    ScanReport report;
    report.equation = eq;
    report.window = window.describe();
    report.weight = phi;
    report.max_defect = merged.global.value;
    report.argmax = merged.global.at;
    for (std::size_t k = 0; k < grid.size(); ++k)
        report.shells.push_back({grid[k], merged.shells[k].value, merged.shells[k].at});
    return report;
}

} // namespace

ScanReport sup_defect_scan(const TestFunction& f, Equation eq, const Window& window,
                           const std::vector<Rational>& shell_grid, unsigned jobs) {
    return run_scan(f, eq, window, shell_grid, std::nullopt, jobs);
}

ScanReport weighted_profile(const TestFunction& f, const WeightFunction& phi, Equation eq,
                            const Window& window, const std::vector<Rational>& shell_grid,
                            unsigned jobs) {
    return run_scan(f, eq, window, shell_grid, phi, jobs);
}

} // namespace stabkit
