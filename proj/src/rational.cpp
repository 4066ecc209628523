#include "stabkit/rational.hpp"

#include "stabkit/error.hpp"

namespace stabkit {

Rational make_rational(Int num, Int den) {
    if (den == 0)
        fail(ErrorCode::InvalidArgument, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

Rational rat_abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

Int rat_floor(const Rational& q) {
    Int n = numerator(q);
    Int d = denominator(q);
    Int quot = n / d;
    if (n % d != 0 && n < 0)
        --quot;
    return quot;
}

Int rat_ceil(const Rational& q) {
    return -rat_floor(-q);
}

Int ceil_sqrt(const Rational& q) {
    if (q <= 0)
        return 0;
    Int root = boost::multiprecision::sqrt(rat_ceil(q));
    while (Rational(root * root) < q)
        ++root;
    return root;
}

std::string format_rational(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1)
        s += "/" + denominator(q).str();
    return s;
}

Rational parse_rational(const std::string& text) {
    auto is_int = [](const std::string& s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    };
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) {
            if (!is_int(text))
                fail(ErrorCode::ParseError, "bad rational '" + text + "'");
            return Rational(Int(text));
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den))
            fail(ErrorCode::ParseError, "bad rational '" + text + "'");
        return make_rational(Int(num), Int(den));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad rational '" + text + "'");
    }
}

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::GroupMismatch: return "group mismatch";
    case ErrorCode::CodomainMismatch: return "codomain mismatch";
    case ErrorCode::NotDivisible: return "not uniquely 2-divisible";
    case ErrorCode::Bounded: return "group is bounded";
    case ErrorCode::DoublingBounded: return "doubled subgroup is bounded";
    case ErrorCode::ZeroExcluded: return "zero element excluded";
    case ErrorCode::UnsupportedDomain: return "unsupported domain";
    case ErrorCode::EmptyWindow: return "empty window";
    case ErrorCode::EmptyGrid: return "empty grid";
    case ErrorCode::InfeasibleSearch: return "infeasible search";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::VerifyFailed: return "verification failed";
    case ErrorCode::InvariantViolation: return "invariant violation";
    }
    return "unknown error";
}

} // namespace stabkit
