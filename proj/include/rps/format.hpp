#pragma once

// Locale-independent number formatting (std::to_chars underneath).

#include <string>

namespace rps {

/// Fixed notation with `decimals` digits; negative zero prints without a sign.
std::string format_fixed(double value, int decimals);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

/// p-value with three decimals, as printed in result tables.
inline std::string format_p(double p) { return format_fixed(p, 3); }

}  // namespace rps
