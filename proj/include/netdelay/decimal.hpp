#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace netdelay::decimal {

// Parses a plain decimal ("10.3", "-5", "1.2e3") and returns the double
// nearest to value * 10^shift. The shift is applied to the decimal exponent
// before rounding, so "10300" with shift -6 yields exactly the double 0.0103.
std::optional<double> parse_scaled(std::string_view text, int shift = 0);

// Shortest fixed-notation decimal string s such that
// parse_scaled(s, -shift) == x. Non-finite inputs become "inf"/"-inf"/"nan".
std::string format_scaled(double x, int shift = 0);

// Shortest round-trip representation in general notation.
std::string format_shortest(double x);

}  // namespace netdelay::decimal
