#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fourcs/errors.hpp"

namespace fourcs {

/// Exact rational arithmetic for bound certificates; no floating point is
/// involved until the caller explicitly asks for an approximation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "a/b", "a", or "-a/b".
inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) raise(Errc::bad_argument, "zero denominator in " + s);
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        raise(Errc::parse_error, "bad rational '" + s + "': " + e.what());
    }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace fourcs
