#pragma once

#include <string>
#include <string_view>

namespace stablesde {

/// Shortest decimal form that parses back to exactly the same double.
/// All emitted numbers (CSV, JSON, config) go through this, so files
/// round-trip to binary precision and identical runs produce identical
/// bytes.
std::string format_double(double value);

/// Strict double parse of the whole string. Accepts fractions "a/b" as a
/// convenience for exponents like 4/9. Throws validation_error otherwise.
double parse_double(std::string_view text);

/// Strict integer parse of the whole string.
long long parse_int(std::string_view text);

}  // namespace stablesde
