#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "mev/util/error.hpp"

namespace mev {

// Exact rational used for gas prices, fees, balances, scores, timestamps and
// every value that feeds an equilibrium comparison. Arbitrary precision, so
// epsilon-perturbed instances and multiplicative bid raises stay exact.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool rat_is_int(const Rat& r) { return denominator(r) == 1; }

inline std::int64_t rat_to_i64(const Rat& r)
{
    if (!rat_is_int(r)) throw error("rational is not an integer: " + r.str());
    return numerator(r).convert_to<std::int64_t>();
}

// Canonical text form: "n" when integral, otherwise "n/d" with d > 0.
std::string rat_to_string(const Rat& r);

// Exact decimal when the denominator is of the form 2^a * 5^b with at most
// 18 fractional digits ("10.1"), canonical "n/d" otherwise. Display only.
std::string rat_to_human(const Rat& r);

// Accepts "n", "n/d" and plain decimals ("10.1", "-0.25").
Rat rat_from_string(const std::string& s);

} // namespace mev
