#include <collapse/core/scalar.hpp>

#include <cstdio>

namespace collapse {

double log10_abs(double x) { return std::log10(std::fabs(x)); }

double log10_abs(const HighPrecision& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(log10(abs(x)));
}

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format17(const HighPrecision& x) { return x.str(17); }

}  // namespace collapse
