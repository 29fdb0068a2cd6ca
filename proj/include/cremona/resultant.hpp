#pragma once

#include <string>
#include <vector>

#include "cremona/mpoly.hpp"

namespace cremona {

// Sylvester resultant eliminating `var`. Errors when both inputs are
// constant in `var`; if exactly one is, the classical convention
// Res(p, q) = p^deg(q) applies. Large homogeneous instances with at most
// two remaining variables are computed by exact interpolation.
MPoly resultant_univar(const MPoly& p, const MPoly& q, const std::string& var);

// Resultant of two binary forms in the variables at positions (s, t) of
// the shared list; the entries of the Sylvester matrix are the
// coefficient polynomials in the remaining variables. Exact (tensor
// interpolation over an integer grid).
MPoly binary_form_resultant(const MPoly& U, const MPoly& V, int s, int t);

// Exact univariate interpolation: monomial coefficients (degree
// nodes.size()-1) of the unique polynomial through (nodes[i], values[i]).
std::vector<Rational> interpolate_univariate(const std::vector<Rational>& nodes,
                                             const std::vector<Rational>& values);

} // namespace cremona
