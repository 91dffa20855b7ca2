#pragma once

#include <string>

namespace adrsig {

/// Shortest decimal text that parses back to the same double. Infinities
/// print as "inf"/"-inf", NaN as "nan".
std::string format_double(double value);

/// "true" / "false".
inline const char* format_bool(bool value) { return value ? "true" : "false"; }

}  // namespace adrsig
