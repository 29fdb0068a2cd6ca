#pragma once

#include <vector>

#include "cremona/charts.hpp"
#include "cremona/lattice.hpp"
#include "cremona/plane.hpp"

namespace cremona {

// Assigned multiplicities along the infinitely near cluster of a tower.
struct BaseConditions {
    int degree = 0;
    ChartTower tower;
    std::vector<int> multiplicities;  // length = tower length, nonnegative
};

// Curves of the given degree with at least the assigned multiplicities;
// basis echelonized in the canonical monomial order.
struct LinearSystem {
    BaseConditions conditions;
    std::vector<MPoly> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

// Exact condition assembly by chart Taylor expansion; kernel via
// solve_exact; echelonized basis.
LinearSystem linear_system(const BaseConditions& cond);

// The raw condition matrix (rows = vanishing Taylor coefficients).
QMatrix condition_matrix(const BaseConditions& cond);

// Basis members as canonical polynomial text, one line each.
std::vector<std::string> system_text_lines(const LinearSystem& sys);

// The Cremona map defined by a 3-dimensional net: coordinates are the
// echelon representatives. Verifies Jacobian purity (a pure power of the
// conic) and birationality (exact pointwise round-trips).
RationalMap cremona_from_net(const LinearSystem& sys);

// The unique conic whose pullback under m is a pure power of the conic
// form: the image of the last exceptional curve. Throws
// NoContractedConicError / AmbiguousConicError.
PlaneCurve find_contracted_conic(const RationalMap& m);

// Postcomposes with the canonical automorphism moving the contracted
// conic onto Q (three canonical parameter values to (0:0:1), (1:1:1),
// (1:0:0)); the result satisfies find_contracted_conic(result) == Q.
RationalMap normalize_to_Q(const RationalMap& m);

// The single image point of the contracted conic Q under m, checked
// against `samples` parameter values of the conic parametrization.
ProjPoint contracted_conic_image(const RationalMap& m, int samples = 10);

} // namespace cremona
