#include "thzplan/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace thzplan::report {
namespace {

std::string chars_of(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) value = 0.0; // normalize -0
    char buf[64];
    std::to_chars_result res;
    if (digits > 0)
        res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    else
        res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace

std::string fmt(double value) { return chars_of(value, 6); }
std::string fmt(double value, int significant_digits) { return chars_of(value, significant_digits); }
std::string shortest(double value) { return chars_of(value, 0); }

double rounded(double value) {
    const std::string s = fmt(value);
    return std::strtod(s.c_str(), nullptr);
}

} // namespace thzplan::report
