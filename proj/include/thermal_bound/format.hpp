// format.hpp — numeric formatting helpers for CSV and pretty output
#pragma once

#include <string>

namespace thermal_bound {

// 17 significant digits: enough to round-trip any double exactly.
std::string format_full(double value);

// 6 significant digits, for human-readable summaries.
std::string format_short(double value);

}  // namespace thermal_bound
