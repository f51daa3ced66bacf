#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace apfree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline auto to_string(const Rational & q) -> std::string
{
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline auto to_double(const Rational & q) -> double
{
    return q.convert_to<double>();
}

} // namespace apfree
