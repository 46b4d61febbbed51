#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qlab {

// Exact coefficients: arbitrary-precision rationals, kept canonical
// (lowest terms, positive denominator) by the backend.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return rat_den(r) == 1; }

inline std::string to_string(const Rational& r) {
    if (is_integral(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace qlab
