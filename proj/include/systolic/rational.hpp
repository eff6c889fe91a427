#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace systolic {

using Rational = boost::rational<std::int64_t>;

inline const Rational kHalf{1, 2};

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

inline std::int64_t floorOf(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

/// True iff 2r is an integer.
inline bool isHalfInteger(const Rational& r) { return r.denominator() == 1 || r.denominator() == 2; }

inline Rational fromTwice(std::int64_t twice) { return Rational(twice, 2); }

/// 2r as an integer; only valid when isHalfInteger(r).
inline std::int64_t twiceOf(const Rational& r) { return (r * 2).numerator(); }

inline double toDouble(const Rational& r) { return boost::rational_cast<double>(r); }

inline std::string toString(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace systolic
