#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace srr {

// Expression templates off: plain value semantics so std::min/std::max and
// mixed arithmetic behave like a builtin numeric type.
using Int = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Parses "7", "-3/4" or a decimal like "2.01" (kept exact: 201/100).
Rat rat_from_string(const std::string& s);

// Canonical form: integers as "n", everything else as "num/den".
std::string rat_to_string(const Rat& r);

double rat_to_double(const Rat& r);

// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double v);

}  // namespace srr
