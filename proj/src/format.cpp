#include "thermal_bound/format.hpp"

#include <cstdio>

namespace thermal_bound {

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string format_short(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

}  // namespace thermal_bound
