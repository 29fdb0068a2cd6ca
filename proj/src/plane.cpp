#include "cremona/plane.hpp"

#include <algorithm>
#include <sstream>

#include "cremona/charts.hpp"
#include "cremona/errors.hpp"
#include "cremona/resultant.hpp"

namespace cremona {

namespace {

const std::vector<std::string> kParamVars = {"t", "u"};

MPoly pv(const std::string& name) { return MPoly::variable(plane_vars(), name); }

// Indices of the geometric variables (x, y, z or t, u); symbolic
// parameter variables (lambda, mu, k, ...) count as coefficients.
std::vector<int> geometric_indices(const std::vector<std::string>& vars) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == "x" || vars[i] == "y" || vars[i] == "z" || vars[i] == "t" ||
            vars[i] == "u")
            idx.push_back(static_cast<int>(i));
    if (idx.empty())
        for (std::size_t i = 0; i < vars.size(); ++i) idx.push_back(static_cast<int>(i));
    return idx;
}

// Substitution map sending x, y, z to the coordinates and every other
// variable of `target_vars` to itself (in the coordinate variable list).
std::map<std::string, MPoly> coord_assignments(const std::array<MPoly, 3>& c,
                                               const std::vector<std::string>& target_vars) {
    std::map<std::string, MPoly> sub = {{"x", c[0]}, {"y", c[1]}, {"z", c[2]}};
    const auto& out_vars = c[0].vars();
    for (const auto& v : target_vars)
        if (!sub.count(v)) sub[v] = MPoly::variable(out_vars, v);
    return sub;
}

} // namespace

const std::vector<std::string>& param_vars() { return kParamVars; }

ProjPoint::ProjPoint(Rational a, Rational b, Rational d) : c{a, b, d} {
    int last = -1;
    for (int i = 0; i < 3; ++i)
        if (c[i] != 0) last = i;
    if (last < 0) throw Error("ProjPoint: all coordinates zero");
    Rational s = c[last];
    for (auto& v : c) v /= s;
}

std::string ProjPoint::to_string() const {
    return "(" + c[0].get_str() + " : " + c[1].get_str() + " : " + c[2].get_str() + ")";
}

ProjPoint ProjPoint::from_string(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '(') body = body.substr(1, body.size() - 2);
    std::array<Rational, 3> v;
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t colon = body.find(':', pos);
        std::string piece = colon == std::string::npos ? body.substr(pos)
                                                       : body.substr(pos, colon - pos);
        piece.erase(std::remove(piece.begin(), piece.end(), ' '), piece.end());
        v[i] = rational_from_string(piece);
        pos = colon == std::string::npos ? body.size() : colon + 1;
    }
    return ProjPoint(v[0], v[1], v[2]);
}

PlaneCurve::PlaneCurve(const MPoly& eq) {
    if (eq.is_zero()) throw Error("PlaneCurve: zero equation");
    int d = 0;
    if (!eq.is_homogeneous_in(geometric_indices(eq.vars()), &d))
        throw Error("PlaneCurve: equation not homogeneous");
    equation = eq.primitive_normalized();
    degree = d;
}

bool PlaneCurve::contains(const ProjPoint& p) const {
    return equation.eval({p.c[0], p.c[1], p.c[2]}) == 0;
}

ProjAut::ProjAut(QMatrix mat) : m(std::move(mat)) {
    if (m.size() != 3 || m[0].size() != 3 || m[1].size() != 3 || m[2].size() != 3)
        throw Error("ProjAut: expected a 3x3 matrix");
    if (det(m) == 0) throw Error("ProjAut: singular matrix");
    Rational lead(0);
    for (const auto& row : m)
        for (const auto& v : row)
            if (lead == 0 && v != 0) lead = v;
    for (auto& row : m)
        for (auto& v : row) v /= lead;
}

ProjPoint ProjAut::apply(const ProjPoint& p) const {
    QVector v = mat_vec(m, {p.c[0], p.c[1], p.c[2]});
    return ProjPoint(v[0], v[1], v[2]);
}

RationalMap::RationalMap(MPoly f0, MPoly f1, MPoly f2, bool cancel_common)
    : coords_{std::move(f0), std::move(f1), std::move(f2)} {
    if (cancel_common) {
        auto c = remove_common_factor({coords_[0], coords_[1], coords_[2]});
        coords_ = {c[0], c[1], c[2]};
    }
    int deg = -1;
    bool any = false;
    for (const auto& f : coords_) {
        if (f.is_zero()) continue;
        any = true;
        auto idx = geometric_indices(f.vars());
        int d = 0;
        if (!f.is_homogeneous_in(idx, &d))
            throw Error("RationalMap: coordinate form not homogeneous");
        if (deg < 0) deg = d;
        else if (d != deg)
            throw Error("RationalMap: coordinate degrees differ");
    }
    if (!any) throw Error("RationalMap: all coordinates zero");
    degree_ = deg;

    // Canonical joint scaling: primitive over all three coordinates,
    // sign fixed by the first nonzero coordinate. Makes equality exact.
    Integer num_gcd(0), den_lcm(1);
    for (const auto& f : coords_)
        for (const auto& [e, c] : f.terms()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
    Rational scale = make_rational(num_gcd, den_lcm);
    for (const auto& f : coords_)
        if (!f.is_zero()) {
            if (f.leading_coeff() < 0) scale = -scale;
            break;
        }
    if (scale != 1)
        for (auto& f : coords_) f = f.scaled(Rational(1) / scale);
}

RationalMap RationalMap::identity() {
    return RationalMap(pv("x"), pv("y"), pv("z"));
}

RationalMap RationalMap::from_aut(const ProjAut& a) {
    std::array<MPoly, 3> f;
    for (int i = 0; i < 3; ++i) {
        f[i] = MPoly::zero(plane_vars());
        f[i] = f[i] + pv("x").scaled(a.m[i][0]) + pv("y").scaled(a.m[i][1]) +
               pv("z").scaled(a.m[i][2]);
    }
    return RationalMap(f[0], f[1], f[2]);
}

CurveParam::CurveParam(MPoly p0, MPoly p1, MPoly p2, bool cancel_common)
    : coords{std::move(p0), std::move(p1), std::move(p2)} {
    if (cancel_common) {
        auto c = remove_common_factor({coords[0], coords[1], coords[2]});
        coords = {c[0], c[1], c[2]};
    }
    int deg = -1;
    bool any = false;
    for (const auto& f : coords) {
        if (f.is_zero()) continue;
        any = true;
        auto idx = geometric_indices(f.vars());
        int d = 0;
        if (!f.is_homogeneous_in(idx, &d)) throw Error("CurveParam: form not homogeneous");
        if (deg < 0) deg = d;
        else if (d != deg) throw Error("CurveParam: degrees differ");
    }
    if (!any) throw Error("CurveParam: all coordinates zero");
}

int CurveParam::degree() const {
    for (const auto& f : coords)
        if (!f.is_zero()) return f.degree();
    return -1;
}

ProjPoint CurveParam::at(const Rational& t, const Rational& u) const {
    return ProjPoint(coords[0].eval({t, u}), coords[1].eval({t, u}),
                     coords[2].eval({t, u}));
}

MPoly standard_conic() { return pv("x") * pv("z") - pv("y") * pv("y"); }
MPoly standard_line() { return pv("z"); }

CurveParam conic_param() {
    MPoly t = MPoly::variable(kParamVars, "t"), u = MPoly::variable(kParamVars, "u");
    return CurveParam(t * t, t * u, u * u);
}

CurveParam line_param() {
    MPoly t = MPoly::variable(kParamVars, "t"), u = MPoly::variable(kParamVars, "u");
    return CurveParam(t, u, MPoly::zero(kParamVars));
}

ProjPoint base_point() { return ProjPoint(Rational(0), Rational(0), Rational(1)); }

ProjPoint apply_map(const RationalMap& m, const ProjPoint& p) {
    std::vector<Rational> pt = {p.c[0], p.c[1], p.c[2]};
    Rational a = m.coord(0).eval(pt), b = m.coord(1).eval(pt), d = m.coord(2).eval(pt);
    if (a == 0 && b == 0 && d == 0)
        throw BasePointError("apply_map: point lies in the base locus");
    return ProjPoint(a, b, d);
}

RationalMap compose(const RationalMap& g, const RationalMap& h) {
    auto sub = coord_assignments(h.coords(), g.coord(0).vars());
    std::array<MPoly, 3> raw;
    bool all_zero = true;
    for (int i = 0; i < 3; ++i) {
        raw[i] = poly_substitute(g.coord(i), sub);
        if (!raw[i].is_zero()) all_zero = false;
    }
    if (all_zero)
        throw Error("compose: composite identically zero (image inside base locus)");
    return RationalMap(raw[0], raw[1], raw[2], /*cancel_common=*/true);
}

CurveParam compose_param(const RationalMap& m, const CurveParam& par) {
    auto sub = coord_assignments(par.coords, m.coord(0).vars());
    std::array<MPoly, 3> raw;
    for (int i = 0; i < 3; ++i) raw[i] = poly_substitute(m.coord(i), sub);
    return CurveParam(raw[0], raw[1], raw[2], /*cancel_common=*/true);
}

MPoly jacobian(const RationalMap& m) {
    const auto& vars = m.coord(0).vars();
    int xi = -1, yi = -1, zi = -1;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (vars[v] == "x") xi = static_cast<int>(v);
        if (vars[v] == "y") yi = static_cast<int>(v);
        if (vars[v] == "z") zi = static_cast<int>(v);
    }
    if (xi < 0 || yi < 0 || zi < 0) throw Error("jacobian: missing plane variables");
    std::array<int, 3> gv = {xi, yi, zi};
    std::array<std::array<MPoly, 3>, 3> d;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d[i][j] = m.coord(i).derivative(gv[j]);
    MPoly det = d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) -
                d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0]) +
                d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
    return det.is_zero() ? det : det.primitive_normalized();
}

MPoly pullback(const RationalMap& m, const PlaneCurve& c) {
    return poly_substitute(c.equation, coord_assignments(m.coords(), c.equation.vars()));
}

PlaneCurve tangent_line(const PlaneCurve& c, const ProjPoint& p) {
    if (!c.contains(p)) throw Error("tangent_line: point not on the curve");
    std::vector<Rational> pt = {p.c[0], p.c[1], p.c[2]};
    Rational gx = c.equation.derivative(0).eval(pt);
    Rational gy = c.equation.derivative(1).eval(pt);
    Rational gz = c.equation.derivative(2).eval(pt);
    if (gx == 0 && gy == 0 && gz == 0)
        throw Error("tangent_line: singular point (vanishing gradient)");
    MPoly line = pv("x").scaled(gx) + pv("y").scaled(gy) + pv("z").scaled(gz);
    return PlaneCurve(line);
}

namespace {

// Deterministic sample points for the inverse solver and verification.
ProjPoint sample_point(int k) {
    // (k+1 : (k*k) % 37 + 1 : 1) spreads samples without repetition mod
    // small patterns.
    return ProjPoint(Rational(k + 1), Rational((k * k) % 37 + 1 + k / 37), Rational(1));
}

// Grid check of g(m(p)) ~ p without expanding the composite
// polynomials: exact, since the pair identities are forms of degree
// deg(g)*deg(m) + 1.
bool verify_inverse_grid(const RationalMap& m, const std::array<MPoly, 3>& g, int dg) {
    const int deg = dg * m.degree() + 1;
    for (int i = 0; i <= deg; ++i) {
        for (int j = 0; j <= deg; ++j) {
            std::vector<Rational> pt = {Rational(i), Rational(j), Rational(1)};
            std::vector<Rational> w = {m.coord(0).eval(pt), m.coord(1).eval(pt),
                                       m.coord(2).eval(pt)};
            Rational a = g[0].eval(w), b = g[1].eval(w), c = g[2].eval(w);
            if (a * pt[1] - b * pt[0] != 0) return false;
            if (a * pt[2] - c * pt[0] != 0) return false;
            if (b * pt[2] - c * pt[1] != 0) return false;
        }
    }
    return true;
}

} // namespace

RationalMap inverse_map(const RationalMap& m, int degree_bound) {
    const int d = m.degree();
    if (degree_bound < 0) degree_bound = d + 2;

    for (int dg = d; dg <= degree_bound; ++dg) {
        auto monos = trivariate_monomials(dg);
        const std::size_t nm = monos.size();
        const std::size_t unknowns = 3 * nm;

        QMatrix rows;
        int produced = 0;
        std::size_t next_sample = 0;
        int target = static_cast<int>(unknowns) + 8;
        QMatrix kernel;
        while (true) {
            while (produced < target) {
                ProjPoint r = sample_point(static_cast<int>(next_sample++));
                if (next_sample > unknowns * 4 + 400) break;
                std::vector<Rational> pt = {r.c[0], r.c[1], r.c[2]};
                std::vector<Rational> w = {m.coord(0).eval(pt), m.coord(1).eval(pt),
                                           m.coord(2).eval(pt)};
                if (w[0] == 0 && w[1] == 0 && w[2] == 0) continue;  // base point
                std::vector<Rational> me(nm);
                for (std::size_t k = 0; k < nm; ++k)
                    me[k] = MPoly::monomial(plane_vars(), monos[k], Rational(1)).eval(w);
                // g0(w) * r2 - g2(w) * r0 = 0  and  g1(w) * r2 - g2(w) * r1 = 0
                QVector row1(unknowns, Rational(0)), row2(unknowns, Rational(0));
                for (std::size_t k = 0; k < nm; ++k) {
                    row1[k] = me[k] * pt[2];
                    row1[2 * nm + k] = -me[k] * pt[0];
                    row2[nm + k] = me[k] * pt[2];
                    row2[2 * nm + k] = -me[k] * pt[1];
                }
                rows.push_back(std::move(row1));
                rows.push_back(std::move(row2));
                produced += 2;
            }
            kernel = kernel_reconstructed(rows);
            if (kernel.size() <= 1) break;
            if (produced >= static_cast<int>(unknowns) * 3) break;
            target += static_cast<int>(unknowns) / 2 + 8;
        }
        if (kernel.size() != 1) continue;

        std::array<MPoly, 3> g;
        for (int c = 0; c < 3; ++c) {
            g[c] = MPoly::zero(plane_vars());
            for (std::size_t k = 0; k < nm; ++k)
                g[c].add_term(monos[k], kernel[0][c * nm + k]);
        }
        if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) continue;
        if (!verify_inverse_grid(m, g, dg)) continue;

        // The constructor applies the canonical joint scaling.
        return RationalMap(g[0], g[1], g[2]);
    }
    throw NotBirationalError("inverse_map: no inverse up to degree " +
                             std::to_string(degree_bound));
}

PlaneCurve implicitize(const CurveParam& par) {
    const int D = par.degree();
    const auto& p0 = par.coords[0];
    const auto& p1 = par.coords[1];
    const auto& p2 = par.coords[2];

    auto is_proportional = [](const MPoly& a, const MPoly& b) {
        if (a.is_zero() || b.is_zero()) return true;
        // a*lead(b) == b*lead(a) as forms
        return (a.scaled(b.leading_coeff()) - b.scaled(a.leading_coeff())).is_zero();
    };

    // Degenerate coordinates: the image sits inside a coordinate line.
    if (p2.is_zero() || p1.is_zero() || p0.is_zero()) {
        const MPoly* a;
        const MPoly* b;
        MPoly line(plane_vars());
        if (p2.is_zero()) { a = &p0; b = &p1; line = pv("z"); }
        else if (p1.is_zero()) { a = &p0; b = &p2; line = pv("y"); }
        else { a = &p1; b = &p2; line = pv("x"); }
        if (is_proportional(*a, *b))
            throw Error("implicitize: image is a single point");
        return PlaneCurve(line);
    }

    // Pencils through the parametrized point, eliminating (t, u).
    std::vector<std::string> all_vars = {"t", "u", "x", "y", "z"};
    auto lift = [&](const MPoly& f) { return f.with_vars(all_vars); };
    MPoly X = MPoly::variable(all_vars, "x");
    MPoly Y = MPoly::variable(all_vars, "y");
    MPoly Z = MPoly::variable(all_vars, "z");
    MPoly U = X * lift(p2) - Z * lift(p0);
    MPoly V = Y * lift(p2) - Z * lift(p1);
    int ti = 0, ui = 1;
    MPoly res = binary_form_resultant(U, V, ti, ui);
    if (res.is_zero())
        throw Error("implicitize: resultant vanished identically (degenerate input)");
    MPoly R = res.with_vars(plane_vars());

    // Extraneous pivot-coordinate powers.
    MPoly zf = pv("z");
    int stripped = 0;
    while (true) {
        auto q = R.divide_exact(zf);
        if (!q) break;
        R = *q;
        ++stripped;
    }
    if (R.degree() <= 0)
        throw Error("implicitize: image is a single point");

    // The candidate must vanish along the parametrization, symbolically
    // and on sampled parameter values.
    std::map<std::string, MPoly> along = {{"x", p0}, {"y", p1}, {"z", p2}};
    if (!poly_substitute(R, along).is_zero())
        throw Error("implicitize: candidate does not vanish on the parametrization");
    for (int s = 0; s < 5; ++s) {
        ProjPoint q = par.at(Rational(s), Rational(1));
        if (R.eval({q.c[0], q.c[1], q.c[2]}) != 0)
            throw Error("implicitize: candidate fails a sampled parameter value");
    }

    MPoly W = R.primitive_normalized();
    if (W.degree() == D) return PlaneCurve(W);

    // Multiple cover: W = F^delta with delta = D / deg(F).
    int first_var = 0;
    for (int v = 0; v < 3; ++v)
        if (W.degree_in(v) > 0) { first_var = v; break; }
    MPoly g = gcd_poly(W, W.derivative(first_var));
    MPoly F = W;
    if (g.degree() > 0) {
        auto q = W.divide_exact(g);
        if (q) F = q->primitive_normalized();
    }
    if (F.degree() <= 0 || D % F.degree() != 0)
        throw Error("implicitize: could not reduce image equation (degree " +
                    std::to_string(W.degree()) + " vs parameter degree " +
                    std::to_string(D) + ")");
    if (!poly_substitute(F, along).is_zero())
        throw Error("implicitize: reduced candidate does not vanish on the parametrization");
    return PlaneCurve(F);
}

ProjPoint pointwise_preimage(const RationalMap& m, const ProjPoint& s) {
    if (m.degree() == 1) {
        QMatrix mat(3, QVector(3));
        for (int i = 0; i < 3; ++i) {
            // Linear coordinates: read off the matrix.
            for (int j = 0; j < 3; ++j) {
                Exponents e(3, 0);
                e[j] = 1;
                mat[i][j] = m.coord(i).coeff(e);
            }
        }
        auto inv = inverse(mat);
        if (!inv) throw NonGenericError("pointwise_preimage: singular linear map");
        QVector v = mat_vec(*inv, {s.c[0], s.c[1], s.c[2]});
        return ProjPoint(v[0], v[1], v[2]);
    }

    int k = 0;
    while (k < 3 && s.c[k] == 0) ++k;
    std::array<int, 2> others{};
    int oi = 0;
    for (int i = 0; i < 3; ++i)
        if (i != k) others[oi++] = i;

    MPoly A = m.coord(others[0]).scaled(s.c[k]) - m.coord(k).scaled(s.c[others[0]]);
    MPoly B = m.coord(others[1]).scaled(s.c[k]) - m.coord(k).scaled(s.c[others[1]]);
    if (A.is_zero() || B.is_zero())
        throw NonGenericError("pointwise_preimage: degenerate pencil");

    const std::vector<std::string> elim_order = {"x", "y", "z"};
    for (const auto& elim : elim_order) {
        int ev = 0;
        for (int v = 0; v < 3; ++v)
            if (plane_vars()[v] == elim) ev = v;
        if (A.degree_in(ev) == 0 && B.degree_in(ev) == 0) continue;
        MPoly R(plane_vars());
        try {
            R = resultant_univar(A, B, elim);
        } catch (const Error&) {
            continue;
        }
        if (R.is_zero()) continue;
        // Strip monomial content (base-cluster projections).
        for (int v = 0; v < 3; ++v) {
            MPoly var = MPoly::variable(plane_vars(), plane_vars()[v]);
            while (true) {
                auto q = R.divide_exact(var);
                if (!q) break;
                R = *q;
            }
        }
        if (R.degree() != 1) continue;
        // Linear binary form alpha*u + beta*v in the two kept variables.
        std::array<Rational, 3> proj{Rational(0), Rational(0), Rational(0)};
        bool bad = false;
        Rational alpha(0), beta(0);
        int va = -1, vb = -1;
        for (const auto& [e, c] : R.terms()) {
            for (int v = 0; v < 3; ++v) {
                if (e[v] == 1) {
                    if (va < 0) { va = v; alpha = c; }
                    else if (v != va && vb < 0) { vb = v; beta = c; }
                    else if (v != va && v != vb) bad = true;
                }
            }
        }
        if (bad || va < 0 || vb < 0) continue;  // monomial stripping makes R genuinely binary
        proj[va] = beta;
        proj[vb] = -alpha;
        // Recover the eliminated coordinate from the univariate gcd.
        MPoly Ax = A, Bx = B;
        for (int v = 0; v < 3; ++v) {
            if (v == ev) continue;
            Ax = Ax.substitute_value(v, proj[v]);
            Bx = Bx.substitute_value(v, proj[v]);
        }
        MPoly g = gcd_poly(Ax, Bx);
        if (g.degree_in(ev) != 1) continue;
        // g = a*var + b  ->  var = -b/a
        Exponents e1(3, 0);
        e1[ev] = 1;
        Rational a = g.coeff(e1);
        Rational b = g.coeff(Exponents(3, 0));
        if (a == 0) continue;
        proj[ev] = -b / a;
        // The two kept coordinates were projective; rescale is automatic
        // in ProjPoint. Forward-verify.
        try {
            ProjPoint r(proj[0], proj[1], proj[2]);
            if (apply_map(m, r) == s) return r;
        } catch (const Error&) {
        }
    }
    throw NonGenericError("pointwise_preimage: no unique reduced preimage found");
}

} // namespace cremona
