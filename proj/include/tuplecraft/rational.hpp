#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tuplecraft {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace tuplecraft
