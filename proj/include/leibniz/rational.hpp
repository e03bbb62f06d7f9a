#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace leibniz {

// All kernels run over exact rationals; there is no floating point anywhere.
// cpp_rational keeps lowest terms with a positive denominator, which is the
// canonical form every serializer below relies on.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& x) { return x.is_zero(); }

/// num/den for any den != 0; the backend rejects negative denominators, so the
/// sign is moved into the numerator here.
inline Rational make_rational(Integer num, Integer den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational& x)
{
    const Integer num = numerator(x);
    const Integer den = denominator(x);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace detail {

inline bool parse_integer_token(const std::string& s, Integer& out)
{
    if (s.empty())
        return false;
    std::size_t pos = (s[0] == '-') ? 1 : 0;
    if (pos == s.size())
        return false;
    for (std::size_t i = pos; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    out = Integer(s);
    return true;
}

} // namespace detail

/// Parses "p" or "p/q". Accepts any integer pair with q != 0 and returns the
/// normalized value; use parse_rational_strict when the input must already be
/// in canonical form.
inline std::optional<Rational> parse_rational(const std::string& s)
{
    const std::size_t slash = s.find('/');
    Integer num, den;
    if (slash == std::string::npos) {
        if (!detail::parse_integer_token(s, num))
            return std::nullopt;
        return Rational(num);
    }
    if (s.find('/', slash + 1) != std::string::npos)
        return std::nullopt;
    if (!detail::parse_integer_token(s.substr(0, slash), num))
        return std::nullopt;
    if (!detail::parse_integer_token(s.substr(slash + 1), den))
        return std::nullopt;
    if (den == 0)
        return std::nullopt;
    return make_rational(std::move(num), std::move(den));
}

/// Strict form used by the default (non-normalizing) file parser: the string
/// must be the canonical spelling, i.e. round-trip through to_string exactly.
/// Rejects "2/4", "3/1", "-0", "007" and the like.
inline std::optional<Rational> parse_rational_strict(const std::string& s)
{
    const auto value = parse_rational(s);
    if (!value || to_string(*value) != s)
        return std::nullopt;
    return value;
}

} // namespace leibniz
