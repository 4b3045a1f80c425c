#ifndef VORTEXLAB_RATIONAL_HPP
#define VORTEXLAB_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vx {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// accepts "p", "p/q" and finite decimals such as "-1.25" or "2e-3"
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace vx

#endif
