#include "stabkit/groups.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <utility>

namespace stabkit {

GroupDescriptor GroupDescriptor::int_lattice(unsigned dim) {
    if (dim == 0)
        fail(ErrorCode::InvalidArgument, "lattice dimension must be positive");
    return {GroupId::IntLattice, dim};
}

GroupDescriptor GroupDescriptor::dyadic_lattice(unsigned dim) {
    if (dim == 0)
        fail(ErrorCode::InvalidArgument, "lattice dimension must be positive");
    return {GroupId::DyadicLattice, dim};
}

GroupDescriptor GroupDescriptor::binary_seq() {
    return {GroupId::BinarySeq, 1};
}

Dyadic Dyadic::normalized(Int mantissa, unsigned exponent) {
    while (exponent > 0 && mantissa % 2 == 0) {
        mantissa /= 2;
        --exponent;
    }
    return {std::move(mantissa), exponent};
}

Rational Dyadic::value() const {
    Int den = Int(1) << exponent;
    return make_rational(mantissa, den);
}

namespace {

Int pow2(unsigned e) {
    return Int(1) << e;
}

void check_same_group(const Element& a, const Element& b) {
    if (!(a.group() == b.group()))
        fail(ErrorCode::GroupMismatch, "operands belong to different groups");
}

} // namespace

Element::Element(GroupDescriptor group, IntVector coords) : group_(group), value_(std::move(coords)) {
    if (group_.id != GroupId::IntLattice)
        fail(ErrorCode::InvalidArgument, "integer coordinates require IntLattice");
    if (std::get<IntVector>(value_).size() != group_.dim)
        fail(ErrorCode::InvalidArgument, "coordinate count does not match lattice dimension");
}

Element::Element(GroupDescriptor group, DyadicVector coords) : group_(group), value_(std::move(coords)) {
    if (group_.id != GroupId::DyadicLattice)
        fail(ErrorCode::InvalidArgument, "dyadic coordinates require DyadicLattice");
    auto& v = std::get<DyadicVector>(value_);
    if (v.size() != group_.dim)
        fail(ErrorCode::InvalidArgument, "coordinate count does not match lattice dimension");
    for (auto& d : v)
        d = Dyadic::normalized(d.mantissa, d.exponent);
}

Element::Element(GroupDescriptor group, BitSupport support) : group_(group), value_(std::move(support)) {
    if (group_.id != GroupId::BinarySeq)
        fail(ErrorCode::InvalidArgument, "bit support requires BinarySeq");
    auto& s = std::get<BitSupport>(value_);
    if (!s.empty() && *s.begin() == 0)
        fail(ErrorCode::InvalidArgument, "bit support indices start at 1");
}

const IntVector& Element::int_coords() const {
    return std::get<IntVector>(value_);
}

const DyadicVector& Element::dyadic_coords() const {
    return std::get<DyadicVector>(value_);
}

const BitSupport& Element::support() const {
    return std::get<BitSupport>(value_);
}

bool Element::is_zero() const {
    switch (group_.id) {
    case GroupId::IntLattice:
        return std::ranges::all_of(int_coords(), [](const Int& c) { return c == 0; });
    case GroupId::DyadicLattice:
        return std::ranges::all_of(dyadic_coords(), [](const Dyadic& d) { return d.mantissa == 0; });
    case GroupId::BinarySeq:
        return support().empty();
    }
    return false;
}

std::strong_ordering Element::operator<=>(const Element& other) const {
    if (auto c = group_.id <=> other.group_.id; c != 0)
        return c;
    if (auto c = group_.dim <=> other.group_.dim; c != 0)
        return c;
    switch (group_.id) {
    case GroupId::IntLattice: {
        const auto& a = int_coords();
        const auto& b = other.int_coords();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (auto c = a[i].compare(b[i]); c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    case GroupId::DyadicLattice: {
        const auto& a = dyadic_coords();
        const auto& b = other.dyadic_coords();
        for (std::size_t i = 0; i < a.size(); ++i) {
            // Compare m1/2^e1 with m2/2^e2 by cross-multiplication.
            Int lhs = a[i].mantissa * pow2(b[i].exponent);
            Int rhs = b[i].mantissa * pow2(a[i].exponent);
            if (auto c = lhs.compare(rhs); c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
    case GroupId::BinarySeq: {
        const auto& a = support();
        const auto& b = other.support();
        auto ita = a.begin();
        auto itb = b.begin();
        for (; ita != a.end() && itb != b.end(); ++ita, ++itb)
            if (auto c = *ita <=> *itb; c != 0)
                return c;
        return a.size() <=> b.size();
    }
    }
    return std::strong_ordering::equal;
}

bool Element::operator==(const Element& other) const {
    return (*this <=> other) == 0;
}

Element zero(const GroupDescriptor& g) {
    switch (g.id) {
    case GroupId::IntLattice:
        return Element(g, IntVector(g.dim, Int(0)));
    case GroupId::DyadicLattice:
        return Element(g, DyadicVector(g.dim));
    case GroupId::BinarySeq:
        return Element(g, BitSupport{});
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

Element int_elem(std::vector<long long> coords) {
    IntVector v(coords.begin(), coords.end());
    auto dim = static_cast<unsigned>(v.size());
    return Element(GroupDescriptor::int_lattice(dim), std::move(v));
}

Element dyadic_elem(std::vector<Rational> coords) {
    DyadicVector v;
    v.reserve(coords.size());
    for (const auto& q : coords) {
        Int den = denominator(q);
        unsigned e = 0;
        while (den % 2 == 0) {
            den /= 2;
            ++e;
        }
        if (den != 1)
            fail(ErrorCode::InvalidArgument, "coordinate " + format_rational(q) + " is not dyadic");
        v.push_back(Dyadic::normalized(numerator(q), e));
    }
    auto dim = static_cast<unsigned>(v.size());
    return Element(GroupDescriptor::dyadic_lattice(dim), std::move(v));
}

Element bits_elem(std::initializer_list<unsigned> indices) {
    return Element(GroupDescriptor::binary_seq(), BitSupport(indices));
}

Element bits_elem(BitSupport support) {
    return Element(GroupDescriptor::binary_seq(), std::move(support));
}

Element add(const Element& a, const Element& b) {
    check_same_group(a, b);
    const auto& g = a.group();
    switch (g.id) {
    case GroupId::IntLattice: {
        IntVector out = a.int_coords();
        const auto& bc = b.int_coords();
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += bc[i];
        return Element(g, std::move(out));
    }
    case GroupId::DyadicLattice: {
        const auto& ac = a.dyadic_coords();
        const auto& bc = b.dyadic_coords();
        DyadicVector out;
        out.reserve(ac.size());
        for (std::size_t i = 0; i < ac.size(); ++i) {
            unsigned e = std::max(ac[i].exponent, bc[i].exponent);
            Int m = ac[i].mantissa * pow2(e - ac[i].exponent) + bc[i].mantissa * pow2(e - bc[i].exponent);
            out.push_back(Dyadic::normalized(std::move(m), e));
        }
        return Element(g, std::move(out));
    }
    case GroupId::BinarySeq: {
        // Addition mod 2 per index: the symmetric difference of supports.
        BitSupport out;
        std::ranges::set_symmetric_difference(a.support(), b.support(),
                                              std::inserter(out, out.end()));
        return Element(g, std::move(out));
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

Element negate(const Element& a) {
    const auto& g = a.group();
    switch (g.id) {
    case GroupId::IntLattice: {
        IntVector out = a.int_coords();
        for (auto& c : out)
            c = -c;
        return Element(g, std::move(out));
    }
    case GroupId::DyadicLattice: {
        DyadicVector out = a.dyadic_coords();
        for (auto& d : out)
            d.mantissa = -d.mantissa;
        return Element(g, std::move(out));
    }
    case GroupId::BinarySeq:
        return a; // characteristic 2: every element is its own inverse
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

Element sub(const Element& a, const Element& b) {
    return add(a, negate(b));
}

Rational norm(const Element& a) {
    switch (a.group().id) {
    case GroupId::IntLattice: {
        Int s = 0;
        for (const auto& c : a.int_coords())
            s += abs(c);
        return Rational(s);
    }
    case GroupId::DyadicLattice: {
        Rational s = 0;
        for (const auto& d : a.dyadic_coords())
            s += make_rational(abs(d.mantissa), pow2(d.exponent));
        return s;
    }
    case GroupId::BinarySeq: {
        Rational s = 0;
        for (unsigned i : a.support())
            s += make_rational(1, i);
        return s;
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

Rational distance(const Element& a, const Element& b) {
    return norm(sub(a, b));
}

Element twice(const Element& a) {
    return add(a, a);
}

Element halve(const Element& a) {
    const auto& g = a.group();
    if (!g.uniquely_2_divisible())
        fail(ErrorCode::NotDivisible, "halving needs a uniquely 2-divisible group");
    DyadicVector out;
    out.reserve(g.dim);
    for (const auto& d : a.dyadic_coords())
        out.push_back(Dyadic::normalized(d.mantissa, d.exponent + 1));
    return Element(g, std::move(out));
}

Rational harmonic(unsigned n) {
    Rational h = 0;
    for (unsigned i = 1; i <= n; ++i)
        h += make_rational(1, i);
    return h;
}

Element unbounded_witness(const GroupDescriptor& g, const Rational& bound) {
    if (!g.unbounded())
        fail(ErrorCode::Bounded, "group has no unboundedness witness");
    if (bound < 0)
        fail(ErrorCode::InvalidArgument, "witness bound must be nonnegative");
    switch (g.id) {
    case GroupId::IntLattice: {
        IntVector v(g.dim, Int(0));
        v[0] = rat_ceil(bound);
        return Element(g, std::move(v));
    }
    case GroupId::DyadicLattice: {
        DyadicVector v(g.dim);
        v[0] = Dyadic::normalized(rat_ceil(bound), 0);
        return Element(g, std::move(v));
    }
    case GroupId::BinarySeq: {
        // Minimal prefix {1..n} with H_n >= bound.
        BitSupport s;
        Rational h = 0;
        unsigned i = 0;
        while (h < bound) {
            ++i;
            h += make_rational(1, i);
            s.insert(s.end(), i);
        }
        return Element(g, std::move(s));
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

Element doubling_witness(const GroupDescriptor& g, const Rational& bound) {
    if (!g.doubling_unbounded())
        fail(ErrorCode::DoublingBounded, "doubled subgroup is bounded, no witness exists");
    return unbounded_witness(g, std::max(bound, Rational(0)) / 2);
}

std::string to_text(const Element& a) {
    std::string out;
    switch (a.group().id) {
    case GroupId::IntLattice: {
        out = "int:[";
        const auto& v = a.int_coords();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ',';
            out += v[i].str();
        }
        out += ']';
        return out;
    }
    case GroupId::DyadicLattice: {
        out = "dyadic:[";
        const auto& v = a.dyadic_coords();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ',';
            out += v[i].mantissa.str() + "/2^" + std::to_string(v[i].exponent);
        }
        out += ']';
        return out;
    }
    case GroupId::BinarySeq: {
        out = "bits:{";
        bool first = true;
        for (unsigned i : a.support()) {
            if (!first)
                out += ',';
            out += std::to_string(i);
            first = false;
        }
        out += '}';
        return out;
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

namespace {

std::vector<std::string> split_list(const std::string& body) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty())
        parts.push_back(cur);
    return parts;
}

std::string strip_wrapper(const std::string& text, const std::string& prefix, char open,
                          char close) {
    if (text.size() < prefix.size() + 2 || text.compare(0, prefix.size(), prefix) != 0 ||
        text[prefix.size()] != open || text.back() != close)
        fail(ErrorCode::ParseError, "bad element '" + text + "'");
    return text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
}

} // namespace

Element element_from_text(const GroupDescriptor& g, const std::string& text) {
    switch (g.id) {
    case GroupId::IntLattice: {
        auto parts = split_list(strip_wrapper(text, "int:", '[', ']'));
        if (parts.size() != g.dim)
            fail(ErrorCode::ParseError, "expected " + std::to_string(g.dim) + " coordinates");
        IntVector v;
        for (const auto& p : parts) {
            Rational q = parse_rational(p);
            if (denominator(q) != 1)
                fail(ErrorCode::ParseError, "integer coordinate expected in '" + text + "'");
            v.push_back(numerator(q));
        }
        return Element(g, std::move(v));
    }
    case GroupId::DyadicLattice: {
        auto parts = split_list(strip_wrapper(text, "dyadic:", '[', ']'));
        if (parts.size() != g.dim)
            fail(ErrorCode::ParseError, "expected " + std::to_string(g.dim) + " coordinates");
        DyadicVector v;
        for (const auto& p : parts) {
            auto caret = p.find("/2^");
            Rational q;
            if (caret != std::string::npos) {
                Rational mant = parse_rational(p.substr(0, caret));
                if (denominator(mant) != 1)
                    fail(ErrorCode::ParseError, "bad mantissa in '" + p + "'");
                unsigned e = 0;
                try {
                    e = static_cast<unsigned>(std::stoul(p.substr(caret + 3)));
                } catch (const std::exception&) {
                    fail(ErrorCode::ParseError, "bad exponent in '" + p + "'");
                }
                q = make_rational(numerator(mant), Int(1) << e);
            } else {
                q = parse_rational(p);
            }
            Int den = denominator(q);
            unsigned e = 0;
            while (den % 2 == 0) {
                den /= 2;
                ++e;
            }
            if (den != 1)
                fail(ErrorCode::ParseError, "coordinate '" + p + "' is not dyadic");
            v.push_back(Dyadic::normalized(numerator(q), e));
        }
        return Element(g, std::move(v));
    }
    case GroupId::BinarySeq: {
        auto parts = split_list(strip_wrapper(text, "bits:", '{', '}'));
        BitSupport s;
        for (const auto& p : parts) {
            unsigned long i = 0;
            try {
                i = std::stoul(p);
            } catch (const std::exception&) {
                fail(ErrorCode::ParseError, "bad support index '" + p + "'");
            }
            if (i == 0)
                fail(ErrorCode::ParseError, "support indices start at 1");
            s.insert(static_cast<unsigned>(i));
        }
        return Element(g, std::move(s));
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown group id");
}

} // namespace stabkit
