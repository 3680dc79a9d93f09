#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace steiner {

// All costs, LP values and certificate quantities are exact rationals.
using Rat = mpq_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts "p/q", plain integers and decimal strings ("1.25", "-0.5", "3.").
Rat parse_rational(const std::string& text);

// Canonical "p" or "p/q" rendering (the authoritative serialized form).
std::string to_fraction_string(const Rat& value);

// Fixed-point decimal rendering with `digits` fraction digits, rounding
// half away from zero. Display only, never parsed back.
std::string to_decimal_string(const Rat& value, int digits);

// Smallest integer >= value.
long ceil_to_long(const Rat& value);

}  // namespace steiner
