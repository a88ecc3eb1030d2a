#pragma once

#include <string>

namespace thzplan::report {

// Fixed 6-significant-digit, locale-independent formatting used for every
// emitted report number, so repeated runs are byte-identical.
std::string fmt(double value);
std::string fmt(double value, int significant_digits);

// Shortest round-trip representation (used by the spectrum writer).
std::string shortest(double value);

// The value a reader obtains back from fmt(value); keeps JSON and CSV
// emissions numerically identical.
double rounded(double value);

} // namespace thzplan::report
