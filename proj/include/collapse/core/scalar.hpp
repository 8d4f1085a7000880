#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace collapse {

// Collapse runs shrink gaps by ~1e-650 over 500 collisions, far below double.
inline constexpr unsigned high_precision_digits = 800;

using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<high_precision_digits>,
    boost::multiprecision::et_off>;

template <class T>
double to_double(const T& x) {
    return static_cast<double>(x);
}

template <class T>
T machine_epsilon() {
    return std::numeric_limits<T>::epsilon();
}

// log10|x|, finite for values that underflow double.
double log10_abs(double x);
double log10_abs(const HighPrecision& x);

// 17 significant digits; scientific notation outside the double range.
std::string format17(double x);
std::string format17(const HighPrecision& x);

}  // namespace collapse
