#pragma once

#include <array>
#include <vector>

#include "cremona/pipeline.hpp"

namespace cremona {

// The one-parameter family of plane automorphisms preserving the line,
// the conic and the anchor point: diag(k^2, k, 1).
struct AutFamily {
    std::array<std::array<MPoly, 3>, 3> matrix;  // entries over {"k"}

    ProjAut member(const Rational& k) const;
};

// Derives the family from the linear conditions a(L) = L, a(p1) = p1 and
// the coefficient equations of a(Q) = Q, verifying each elimination step
// and the group law symbolically.
AutFamily automorphism_family(const PlaneCurve& line, const PlaneCurve& conic,
                              const ProjPoint& p1);

// Constraint polynomials k^(2i-1) b_i - a_i for the parameter levels
// with (a_i, b_i) != (0, 0), over {"k"}.
std::vector<MPoly> chart_constraints(const ChartTower& source,
                                     const ChartTower& transported);

// Remainder sequence of the joint univariate gcd, kept for re-checking.
struct EuclidChain {
    std::vector<MPoly> sequence;  // inputs first, then every remainder
    MPoly gcd;
};

EuclidChain euclid_chain(const std::vector<MPoly>& polys);

Certificate nonequivalence_certificate(const ConstructionConfig& cfg,
                                       const ChartTower& source,
                                       const ChartTower& transported);

Certificate unicuspidal_certificate(const PlaneCurve& curve, const std::string& name);

Certificate complement_iso_certificate(const ConstructionResult& result);

std::vector<Certificate> tower_certificates(const ConstructionResult& result);

// Note recorded in every report: the chart data places the fifth
// cluster point on the strict conic transform (the intersection data in
// the charts is the operational ground truth).
std::string cluster_note();

} // namespace cremona
