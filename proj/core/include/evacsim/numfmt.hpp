#pragma once

#include <cstdint>
#include <string>

namespace evacsim {

/// Canonical number text used everywhere the simulator emits or re-emits
/// values: locale independent, 6 significant digits, no trailing zeros.
std::string format_number(double value);
std::string format_number(std::int64_t value);

} // namespace evacsim
