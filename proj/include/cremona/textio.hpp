#pragma once

#include <string>
#include <vector>

#include "cremona/mpoly.hpp"

namespace cremona {

// Canonical polynomial text format, used verbatim in reports and golden
// files. Terms in canonical order; every variable printed with an
// explicit exponent; coefficients exact integers or fractions:
//   "2 x^2 y^0 z^0 - 1/3 x^0 y^1 z^1",  zero polynomial: "0".
std::string poly_to_text(const MPoly& p);

// Inverse of poly_to_text for the given variable list.
MPoly poly_from_text(const std::string& text, const std::vector<std::string>& vars);

// Exact-fraction CSV (one row per line, comma separated).
std::string matrix_to_csv(const std::vector<std::vector<Rational>>& rows);

} // namespace cremona
