#pragma once

#include <utility>
#include <vector>

#include "cremona/linalg.hpp"
#include "cremona/mpoly.hpp"

namespace cremona {

// One elementary blow-up in local coordinates. The composed substitution
// to the previous chart is
//   dir == OnY:  (x, y) -> (cx + x*y, cy + y),   exceptional curve {y = 0}
//   dir == OnX:  (x, y) -> (cx + x,   cy + x*y), exceptional curve {x = 0}
// with (cx, cy) the blown-up point in the previous chart.
struct ChartStep {
    enum Dir { OnY, OnX };
    int label = 0;          // 1-based index i of the point p_i
    Dir dir = OnY;
    Rational cx, cy;        // center in the current (previous) chart

    // The substitution "previous = map(next)" as a pair of polynomials
    // in the chart variables.
    std::pair<MPoly, MPoly> chart_map() const;
};

// The chain of infinitely near points p_1, ..., p_{4+2n} over the anchor
// p_1 = (0:0:1), encoded by its blow-up charts. The embedding of the
// first chart is (x, y) -> (x : y : 1).
struct ChartTower {
    int n = 0;                       // family parameter, length = 4 + 2n
    std::vector<Rational> params;    // free parameters a_1..a_n
    std::vector<ChartStep> steps;

    int length() const { return static_cast<int>(steps.size()); }
};

const std::vector<std::string>& chart_vars();   // {x, y}
const std::vector<std::string>& plane_vars();   // {x, y, z}

// Canonical (graded-lex descending) list of trivariate monomials of the
// given total degree.
std::vector<Exponents> trivariate_monomials(int degree);

// Tower of length 4 + 2n for parameters a (a.size() == n, a[n-1] != 0).
ChartTower build_tower(int n, const std::vector<Rational>& a);

// Transported tower with parameters b_i = a_i * lambda^-i * mu^-(2i-1);
// its first 4+n steps are identical to the source tower.
ChartTower transport_tower(const ChartTower& t, const Rational& lambda, const Rational& mu);

// Multiplicities of the strict transform chain of a plane curve equation
// F (homogeneous in x,y,z) at every point of the tower.
std::vector<int> strict_multiplicities(const MPoly& F, const ChartTower& t);

// Multiplicity at a single point (1-based index).
int vanishing_order(const MPoly& F, const ChartTower& t, int index);

// prox[j-1][i-1] is true when p_j lies on the strict transform of the
// exceptional curve of p_i (j > i), read off the charts.
std::vector<std::vector<bool>> proximity_table(const ChartTower& t);

// Composite chart map from the chart after step `upto` (1-based) to the
// first affine chart (z = 1 plane coordinates).
std::pair<MPoly, MPoly> composite_chart(const ChartTower& t, int upto);

// Linear conditions on the coefficients of a degree-d form imposing
// multiplicity >= mult[i] at p_{i+1}. Rows are the Taylor coefficients
// that must vanish; columns follow the canonical monomial list of degree
// d (returned through `monomials` when non-null).
QMatrix multiplicity_conditions(int degree, const ChartTower& t,
                                const std::vector<int>& mult,
                                std::vector<Exponents>* monomials = nullptr);

} // namespace cremona
