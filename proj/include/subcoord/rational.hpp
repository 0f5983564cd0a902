#pragma once

#include <boost/rational.hpp>
#include <string>

#include "errors.hpp"

namespace subcoord {

using Rational = boost::rational<long long>;

/// "7" or "7/6"; never a decimal.
inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ContractViolation("not a rational number: '" + s + "'");
    }
}

}  // namespace subcoord
