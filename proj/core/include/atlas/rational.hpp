#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace atlas {

// Exact arbitrary-precision rational. Expression templates are disabled so
// that `auto` always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& r);

// Accepts "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

// Smallest integer >= r.
BigInt ceil(const Rational& r);

} // namespace atlas
