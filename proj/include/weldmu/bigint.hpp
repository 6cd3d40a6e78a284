#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace weldmu {

// Coefficients and invariant values are exact integers.  Magnus coefficients
// grow roughly like (word length)^degree under eta iteration, which overflows
// 64 bits already for modest diagrams at degree 5, so everything numeric in
// the public API is arbitrary precision.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace weldmu
