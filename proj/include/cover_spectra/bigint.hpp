#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cover_spectra {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural log of a positive integer without overflowing double.
double log_of(const BigInt& value);

/// value^(1/root) computed in log space. Returns 0 for value == 0.
double root_of(const BigInt& value, unsigned root);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace cover_spectra
