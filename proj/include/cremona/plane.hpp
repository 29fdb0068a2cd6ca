#pragma once

#include <array>
#include <string>
#include <vector>

#include "cremona/linalg.hpp"
#include "cremona/mpoly.hpp"

namespace cremona {

// Point of P^2, normalized so the last nonzero coordinate equals 1.
struct ProjPoint {
    std::array<Rational, 3> c;

    ProjPoint(Rational a, Rational b, Rational d);
    bool operator==(const ProjPoint& o) const { return c == o.c; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    std::string to_string() const;
    static ProjPoint from_string(const std::string& s);
};

// Plane curve: homogeneous primitive equation with positive leading
// coefficient in the canonical order.
struct PlaneCurve {
    MPoly equation;
    int degree = 0;

    explicit PlaneCurve(const MPoly& eq);
    bool operator==(const PlaneCurve& o) const { return equation == o.equation; }
    bool contains(const ProjPoint& p) const;
};

// Linear automorphism of the plane: invertible 3x3 matrix normalized so
// its first nonzero entry (row major) equals 1.
struct ProjAut {
    QMatrix m;

    explicit ProjAut(QMatrix mat);
    ProjPoint apply(const ProjPoint& p) const;
};

// Rational self-map of the plane: three homogeneous forms of equal
// degree whose joint gcd is 1.
class RationalMap {
public:
    RationalMap(MPoly f0, MPoly f1, MPoly f2, bool cancel_common = false);
    static RationalMap identity();
    static RationalMap from_aut(const ProjAut& a);

    const MPoly& coord(int i) const { return coords_[i]; }
    const std::array<MPoly, 3>& coords() const { return coords_; }
    int degree() const { return degree_; }
    bool operator==(const RationalMap& o) const { return coords_ == o.coords_; }

private:
    std::array<MPoly, 3> coords_;
    int degree_ = 0;
};

// Parametrized curve: three binary forms in (t, u) of equal degree,
// joint gcd 1, not all zero.
struct CurveParam {
    std::array<MPoly, 3> coords;

    CurveParam(MPoly p0, MPoly p1, MPoly p2, bool cancel_common = false);
    int degree() const;
    ProjPoint at(const Rational& t, const Rational& u) const;
};

const std::vector<std::string>& param_vars();   // {t, u}

// The fixed geometric input of the construction.
MPoly standard_conic();        // x z - y^2
MPoly standard_line();         // z
CurveParam conic_param();      // (t^2 : t u : u^2)
CurveParam line_param();       // (t : u : 0)
ProjPoint base_point();        // (0 : 0 : 1)

ProjPoint apply_map(const RationalMap& m, const ProjPoint& p);

// g o h with the common factor of the raw coordinates removed.
RationalMap compose(const RationalMap& g, const RationalMap& h);

// m o par as a parametrized curve (common binary factor removed).
CurveParam compose_param(const RationalMap& m, const CurveParam& par);

// Inverse by solving the linear proportionality conditions at candidate
// degree deg(m), increasing on failure up to `degree_bound` (default
// deg(m) + 2). The result is verified exactly.
RationalMap inverse_map(const RationalMap& m, int degree_bound = -1);

// Determinant of the matrix of partials, normalized primitive.
MPoly jacobian(const RationalMap& m);

// Equation of c composed with the coordinates of m; multiplicity
// information preserved (no cancellation).
MPoly pullback(const RationalMap& m, const PlaneCurve& c);

// Reduced implicit equation of the image curve, by resultant
// elimination with extraneous-factor removal.
PlaneCurve implicitize(const CurveParam& par);

PlaneCurve tangent_line(const PlaneCurve& c, const ProjPoint& p);

// Unique preimage of a generic point under a birational map, via the
// residual intersection of two pencil curves.
ProjPoint pointwise_preimage(const RationalMap& m, const ProjPoint& s);

} // namespace cremona
