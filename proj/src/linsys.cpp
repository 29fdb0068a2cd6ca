#include "cremona/linsys.hpp"

#include <algorithm>

#include "cremona/errors.hpp"
#include "cremona/textio.hpp"

namespace cremona {

namespace {

// Symmetric matrix of a conic equation.
QMatrix conic_matrix(const MPoly& conic) {
    auto c = [&](int i, int j, int k) { return conic.coeff({i, j, k}); };
    Rational h = make_rational(1, 2);
    return {{c(2, 0, 0), c(1, 1, 0) * h, c(1, 0, 1) * h},
            {c(1, 1, 0) * h, c(0, 2, 0), c(0, 1, 1) * h},
            {c(1, 0, 1) * h, c(0, 1, 1) * h, c(0, 0, 2)}};
}

} // namespace

QMatrix condition_matrix(const BaseConditions& cond) {
    return multiplicity_conditions(cond.degree, cond.tower, cond.multiplicities);
}

std::vector<std::string> system_text_lines(const LinearSystem& sys) {
    std::vector<std::string> out;
    out.reserve(sys.basis.size());
    for (const auto& f : sys.basis) out.push_back(poly_to_text(f));
    return out;
}

LinearSystem linear_system(const BaseConditions& cond) {
    std::vector<Exponents> monos;
    QMatrix m = multiplicity_conditions(cond.degree, cond.tower, cond.multiplicities, &monos);
    auto sol = solve_exact(m);

    LinearSystem sys;
    sys.conditions = cond;
    if (sol.basis.empty()) return sys;  // empty system: dimension 0

    // Canonical echelon basis with respect to the monomial order.
    auto [red, pivots] = rref(sol.basis);
    for (const auto& row : red) {
        MPoly f(plane_vars());
        for (std::size_t j = 0; j < monos.size(); ++j)
            if (row[j] != 0) f.add_term(monos[j], row[j]);
        if (f.is_zero()) continue;
        sys.basis.push_back(f.primitive_normalized());
    }

    // Every member satisfies the assembled conditions by construction
    // (kernel of the condition matrix). Echelon members can be unloaded
    // (e.g. a tangent-line-times-conic-squared member carries excess
    // multiplicity early and a deficit later), so the realizability of
    // the virtual multiplicities is certified on a generic combination.
    bool realized = false;
    for (int trial = 0; trial < 8 && !realized; ++trial) {
        MPoly g = MPoly::zero(plane_vars());
        Rational w(1);
        for (const auto& f : sys.basis) {
            g = g + f.scaled(w);
            w *= Rational(trial + 2);
        }
        if (g.is_zero()) continue;
        auto nu = strict_multiplicities(g, cond.tower);
        realized = true;
        for (std::size_t i = 0; i < nu.size(); ++i)
            if (nu[i] < cond.multiplicities[i]) realized = false;
    }
    if (!realized)
        throw StructuralError("linear_system: no member attains the assigned multiplicities");
    return sys;
}

RationalMap cremona_from_net(const LinearSystem& sys) {
    if (sys.dimension() != 3)
        throw StructuralError("cremona_from_net: net dimension is " +
                              std::to_string(sys.dimension()) + ", expected 3");
    std::vector<MPoly> coords = {sys.basis[0], sys.basis[1], sys.basis[2]};
    auto cleaned = remove_common_factor(coords);
    if (!(cleaned[0] == coords[0] && cleaned[1] == coords[1] && cleaned[2] == coords[2]))
        throw StructuralError("cremona_from_net: net has a fixed component");
    RationalMap m(coords[0], coords[1], coords[2]);

    // Jacobian must be a pure power of the conic.
    const long d = m.degree();
    const long expo = (3 * d - 3) / 2;
    MPoly jac = jacobian(m);
    MPoly conic = standard_conic();
    for (long i = 0; i < expo; ++i) {
        auto q = jac.divide_exact(conic);
        if (!q)
            throw StructuralError("cremona_from_net: Jacobian is not a pure conic power");
        jac = *q;
    }
    if (!jac.is_constant() || jac.constant_value() == 0)
        throw StructuralError("cremona_from_net: Jacobian has unexpected degree");

    // Birationality: exact round trips on three generic samples.
    int verified = 0;
    for (int k = 2; k < 40 && verified < 3; ++k) {
        ProjPoint r(Rational(k), Rational(k * k + 1), Rational(1));
        try {
            ProjPoint s = apply_map(m, r);
            if (pointwise_preimage(m, s) == r) ++verified;
        } catch (const Error&) {
            continue;  // unlucky sample
        }
    }
    if (verified < 3)
        throw StructuralError("cremona_from_net: birationality round-trips failed");
    return m;
}

PlaneCurve find_contracted_conic(const RationalMap& m) {
    const int d = m.degree();
    if (d < 2)
        throw NoContractedConicError("find_contracted_conic: degree-1 maps contract nothing");

    MPoly conic = standard_conic();
    auto monos2 = trivariate_monomials(2);  // x^2, xy, xz, y^2, yz, z^2

    // Basis of the current solution space: coordinates in the original
    // six conic coefficients plus the current quotient polynomial.
    struct Element {
        QVector coords;
        MPoly quotient;
    };
    std::vector<Element> space;
    for (std::size_t j = 0; j < monos2.size(); ++j) {
        Element e;
        e.coords.assign(6, Rational(0));
        e.coords[j] = 1;
        e.quotient = pullback(m, PlaneCurve(MPoly::monomial(plane_vars(), monos2[j], Rational(1))));
        space.push_back(std::move(e));
    }

    for (int round = 0; round < d; ++round) {
        // Demand divisibility by the conic once more.
        std::vector<MPoly> rems;
        rems.reserve(space.size());
        for (const auto& e : space) rems.push_back(e.quotient.divrem(conic).second);

        // Row space: monomials appearing in any remainder.
        std::vector<Exponents> rows;
        for (const auto& r : rems)
            for (const auto& [e, c] : r.terms())
                if (std::find(rows.begin(), rows.end(), e) == rows.end()) rows.push_back(e);
        QMatrix kernel;
        if (rows.empty()) {
            // Every quotient is already divisible: the space passes whole.
            kernel.assign(space.size(), QVector(space.size(), Rational(0)));
            for (std::size_t k = 0; k < space.size(); ++k) kernel[k][k] = 1;
        } else {
            QMatrix condm(rows.size(), QVector(space.size(), Rational(0)));
            for (std::size_t k = 0; k < space.size(); ++k)
                for (std::size_t ri = 0; ri < rows.size(); ++ri)
                    condm[ri][k] = rems[k].coeff(rows[ri]);
            auto sol = solve_exact(condm);
            kernel = sol.basis;
        }
        if (kernel.empty())
            throw NoContractedConicError("find_contracted_conic: no conic survives round " +
                                         std::to_string(round + 1));
        std::vector<Element> next;
        for (const auto& combo : kernel) {
            Element e;
            e.coords.assign(6, Rational(0));
            MPoly q = MPoly::zero(plane_vars());
            for (std::size_t k = 0; k < space.size(); ++k) {
                if (combo[k] == 0) continue;
                for (int j = 0; j < 6; ++j) e.coords[j] += combo[k] * space[k].coords[j];
                q = q + space[k].quotient.scaled(combo[k]);
            }
            auto div = q.divide_exact(conic);
            if (!div)
                throw StructuralError("find_contracted_conic: inexact division after reduction");
            e.quotient = *div;
            next.push_back(std::move(e));
        }
        space = std::move(next);
    }

    if (space.empty())
        throw NoContractedConicError("find_contracted_conic: empty solution space");
    if (space.size() > 1)
        throw AmbiguousConicError("find_contracted_conic: solution space has dimension " +
                                  std::to_string(space.size()));

    MPoly qstar(plane_vars());
    for (int j = 0; j < 6; ++j)
        if (space[0].coords[j] != 0)
            qstar.add_term(monos2[j], space[0].coords[j]);
    if (qstar.is_zero())
        throw NoContractedConicError("find_contracted_conic: zero solution");
    return PlaneCurve(qstar);
}

ProjPoint contracted_conic_image(const RationalMap& m, int samples) {
    CurveParam qp = conic_param();
    std::vector<ProjPoint> images;
    for (long t = 1; static_cast<int>(images.size()) < samples && t < samples + 40; ++t) {
        ProjPoint p = qp.at(Rational(t), Rational(1));
        try {
            images.push_back(apply_map(m, p));
        } catch (const BasePointError&) {
            continue;
        }
    }
    if (static_cast<int>(images.size()) < samples)
        throw StructuralError("contracted_conic_image: not enough usable samples");
    for (const auto& q : images)
        if (!(q == images[0]))
            throw StructuralError("contracted_conic_image: map does not contract the conic");
    return images[0];
}

RationalMap normalize_to_Q(const RationalMap& m) {
    PlaneCurve qstar = find_contracted_conic(m);
    if (qstar.equation == standard_conic()) return m;  // already normalized
    QMatrix s = conic_matrix(qstar.equation);
    if (det(s) == 0)
        throw StructuralError("normalize_to_Q: contracted conic is singular");

    ProjPoint q1 = contracted_conic_image(m);
    if (!qstar.contains(q1))
        throw StructuralError("normalize_to_Q: image point misses the contracted conic");

    // Pencil of lines through q1 (deterministic rule from the
    // normalized coordinates).
    QVector w0(3), winf(3);
    if (q1.c[2] == 1) {
        w0 = {Rational(0), Rational(1), -q1.c[1]};   // y - b z
        winf = {Rational(1), Rational(0), -q1.c[0]}; // x - a z
    } else if (q1.c[1] == 1) {
        w0 = {Rational(0), Rational(0), Rational(1)};  // z
        winf = {Rational(1), -q1.c[0], Rational(0)};   // x - a y
    } else {
        w0 = {Rational(0), Rational(0), Rational(1)};  // z
        winf = {Rational(0), Rational(1), Rational(0)}; // y
    }

    // Line w(t,u) = u*w0 - t*winf; v(t,u) = w x q1 is a point of the
    // line distinct from q1 for all but finitely many parameters.
    const auto& tv = param_vars();
    MPoly T = MPoly::variable(tv, "t"), U = MPoly::variable(tv, "u");
    std::array<MPoly, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = U.scaled(w0[i]) - T.scaled(winf[i]);
    std::array<MPoly, 3> v;
    v[0] = w[1].scaled(q1.c[2]) - w[2].scaled(q1.c[1]);
    v[1] = w[2].scaled(q1.c[0]) - w[0].scaled(q1.c[2]);
    v[2] = w[0].scaled(q1.c[1]) - w[1].scaled(q1.c[0]);

    // Residual intersection of the line with the conic:
    // R = B*v - C*q1, B = 2*q1^T S v, C = v^T S v.
    auto smul = [&](const std::array<MPoly, 3>& a, const QVector& b) {
        MPoly acc = MPoly::zero(tv);
        for (int i = 0; i < 3; ++i) {
            MPoly row = MPoly::zero(tv);
            for (int j = 0; j < 3; ++j) row = row + a[j].scaled(s[i][j]);
            acc = acc + row.scaled(b[i]);
        }
        return acc;
    };
    QVector q1v = {q1.c[0], q1.c[1], q1.c[2]};
    MPoly B = smul(v, q1v).scaled(Rational(2));
    MPoly C = MPoly::zero(tv);
    for (int i = 0; i < 3; ++i) {
        MPoly row = MPoly::zero(tv);
        for (int j = 0; j < 3; ++j) row = row + v[j].scaled(s[i][j]);
        C = C + row * v[i];
    }
    std::array<MPoly, 3> par;
    for (int i = 0; i < 3; ++i) par[i] = B * v[i] - C.scaled(q1.c[i]);

    // Coefficient matrix of the binary quadratics on (t^2, tu, u^2).
    QMatrix rmat(3, QVector(3));
    for (int i = 0; i < 3; ++i) {
        rmat[i][0] = par[i].coeff({2, 0});
        rmat[i][1] = par[i].coeff({1, 1});
        rmat[i][2] = par[i].coeff({0, 2});
    }
    auto rinv = inverse(rmat);
    if (!rinv)
        throw StructuralError("normalize_to_Q: degenerate conic parametrization");

    ProjAut alpha(*rinv);
    RationalMap result = compose(RationalMap::from_aut(alpha), m);

    // Postcondition: the pullback of Q is a pure conic power.
    MPoly conic = standard_conic();
    MPoly pb = pullback(result, PlaneCurve(conic));
    for (int i = 0; i < m.degree(); ++i) {
        auto q = pb.divide_exact(conic);
        if (!q)
            throw StructuralError("normalize_to_Q: pullback of Q is not a pure conic power");
        pb = *q;
    }
    if (!pb.is_constant() || pb.constant_value() == 0)
        throw StructuralError("normalize_to_Q: pullback degree mismatch");
    return result;
}

} // namespace cremona
