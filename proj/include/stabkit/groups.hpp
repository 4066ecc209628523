#pragma once

#include "stabkit/rational.hpp"

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace stabkit {

/// The three built-in metric abelian groups.
///
///   IntLattice(dim)    Z^dim with the sum-of-absolute-values norm.
///   DyadicLattice(dim) Z[1/2]^dim with the same norm; uniquely 2-divisible.
///   BinarySeq          eventually-zero 0/1 sequences under pointwise
///                      addition mod 2, normed by the harmonic sum over the
///                      support. Unbounded, but every doubled element is 0.
enum class GroupId : std::uint8_t { IntLattice, DyadicLattice, BinarySeq };

struct GroupDescriptor {
    GroupId id = GroupId::IntLattice;
    unsigned dim = 1; // lattice dimension; 1 for BinarySeq

    bool uniquely_2_divisible() const { return id == GroupId::DyadicLattice; }
    bool unbounded() const { return true; } // all three built-ins
    bool doubling_unbounded() const { return id != GroupId::BinarySeq; }

    static GroupDescriptor int_lattice(unsigned dim = 1);
    static GroupDescriptor dyadic_lattice(unsigned dim = 1);
    static GroupDescriptor binary_seq();

    friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// A dyadic rational m / 2^e in canonical form: m odd, or e == 0.
struct Dyadic {
    Int mantissa = 0;
    unsigned exponent = 0;

    static Dyadic normalized(Int mantissa, unsigned exponent);
    Rational value() const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

using IntVector = std::vector<Int>;
using DyadicVector = std::vector<Dyadic>;
using BitSupport = std::set<unsigned>; // indices i >= 1 with a_i = 1

/// A group element tagged with the group it belongs to. Elements are
/// immutable values; every operation returns a fresh element.
class Element {
public:
    Element(GroupDescriptor group, IntVector coords);
    Element(GroupDescriptor group, DyadicVector coords);
    Element(GroupDescriptor group, BitSupport support);

    const GroupDescriptor& group() const { return group_; }
    const IntVector& int_coords() const;
    const DyadicVector& dyadic_coords() const;
    const BitSupport& support() const;

    bool is_zero() const;

    // Value order (coordinatewise / lex on sorted supports); total within a
    // group, groups sorted by (id, dim) so std::map keys stay well-defined.
    std::strong_ordering operator<=>(const Element& other) const;
    bool operator==(const Element& other) const;

private:
    GroupDescriptor group_;
    std::variant<IntVector, DyadicVector, BitSupport> value_;
};

Element zero(const GroupDescriptor& g);

/// Convenience constructors. int_elem/dyadic_elem take dim-matching lists.
Element int_elem(std::vector<long long> coords);
Element dyadic_elem(std::vector<Rational> coords); // entries must be dyadic
Element bits_elem(std::initializer_list<unsigned> indices);
Element bits_elem(BitSupport support);

Element add(const Element& a, const Element& b);
Element negate(const Element& a);
Element sub(const Element& a, const Element& b);

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a) { return negate(a); }
inline Element operator-(const Element& a, const Element& b) { return sub(a, b); }

/// Induced norm d(a, 0), exact. L1 for lattices, harmonic sum for BinarySeq.
Rational norm(const Element& a);

/// Translation-invariant metric d(a, b) = norm(a - b).
Rational distance(const Element& a, const Element& b);

Element twice(const Element& a); // a + a; the zero element on BinarySeq

/// The unique b with twice(b) = a. Errors with NotDivisible unless the
/// group is uniquely 2-divisible (DyadicLattice only).
Element halve(const Element& a);

/// Deterministic element with norm >= bound (bound >= 0). Lattices use
/// ceil(bound) times the first basis vector; BinarySeq uses the shortest
/// prefix support {1..n} whose harmonic sum reaches the bound. Harmonic
/// growth is slow: bounds much beyond 10 get expensive on BinarySeq.
Element unbounded_witness(const GroupDescriptor& g, const Rational& bound);

/// Deterministic u with norm(twice(u)) >= bound. Errors with
/// DoublingBounded on BinarySeq, where 2X = {0}.
Element doubling_witness(const GroupDescriptor& g, const Rational& bound);

/// Exact harmonic number H_n = 1 + 1/2 + ... + 1/n.
Rational harmonic(unsigned n);

/// Canonical text forms: "int:[a,b,...]", "dyadic:[m/2^e,...]", "bits:{i,j,...}".
std::string to_text(const Element& a);

/// Parses the canonical form; the element must belong to g.
Element element_from_text(const GroupDescriptor& g, const std::string& text);

} // namespace stabkit
