#pragma once

#include <gmpxx.h>

#include <string>

namespace superflat {

// Exact arbitrary-precision rational scalar. All operator construction and
// identity checks run over this type; doubles appear only in the flow solver
// and in reports.
using Rat = mpq_class;

// canonical "numerator/denominator" form with denominator >= 1, e.g. "-3/2", "0/1"
std::string rat_string(const Rat& q);

// parses "p" or "p/q" (optional sign, decimal digits); throws InputError otherwise
Rat rat_parse(const std::string& text);

double rat_to_double(const Rat& q);

} // namespace superflat
