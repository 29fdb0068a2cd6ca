#include "cremona/charts.hpp"

#include "cremona/errors.hpp"

namespace cremona {

namespace {

const std::vector<std::string> kChartVars = {"x", "y"};
const std::vector<std::string> kPlaneVars = {"x", "y", "z"};

// Exponent-level blow-up substitution followed by exact division by the
// m-th power of the new exceptional coordinate. Terms of total degree
// < m must have been removed (or m be the minimal degree).
MPoly blowdown_substitute(const MPoly& g, ChartStep::Dir dir, int m) {
    MPoly out(g.vars());
    for (const auto& [e, c] : g.terms()) {
        int a = e[0], b = e[1];
        if (a + b < m) throw Error("blowdown_substitute: term below multiplicity");
        Exponents e2(2);
        if (dir == ChartStep::OnY) {
            e2[0] = a;
            e2[1] = a + b - m;
        } else {
            e2[0] = a + b - m;
            e2[1] = b;
        }
        out.add_term(e2, c);
    }
    return out;
}

MPoly shift_to_center(const MPoly& g, const ChartStep& s) {
    MPoly out = g;
    if (s.cx != 0) out = out.shifted(0, s.cx);
    if (s.cy != 0) out = out.shifted(1, s.cy);
    return out;
}

} // namespace

const std::vector<std::string>& chart_vars() { return kChartVars; }
const std::vector<std::string>& plane_vars() { return kPlaneVars; }

std::vector<Exponents> trivariate_monomials(int degree) {
    std::vector<Exponents> out;
    for (int i = degree; i >= 0; --i)
        for (int j = degree - i; j >= 0; --j)
            out.push_back({i, j, degree - i - j});
    return out;
}

std::pair<MPoly, MPoly> ChartStep::chart_map() const {
    MPoly x = MPoly::variable(kChartVars, "x");
    MPoly y = MPoly::variable(kChartVars, "y");
    if (dir == OnY)
        return {MPoly::constant(kChartVars, cx) + x * y,
                MPoly::constant(kChartVars, cy) + y};
    return {MPoly::constant(kChartVars, cx) + x,
            MPoly::constant(kChartVars, cy) + x * y};
}

ChartTower build_tower(int n, const std::vector<Rational>& a) {
    if (n < 1) throw ConfigError("build_tower: n must be >= 1");
    if (static_cast<int>(a.size()) != n)
        throw ConfigError("build_tower: expected exactly n tower parameters");
    if (a.back() == 0) throw ConfigError("build_tower: a_n must be nonzero");

    ChartTower t;
    t.n = n;
    t.params = a;
    auto push = [&](ChartStep::Dir dir, Rational cx, Rational cy) {
        ChartStep s;
        s.label = t.length() + 1;
        s.dir = dir;
        s.cx = std::move(cx);
        s.cy = std::move(cy);
        t.steps.push_back(std::move(s));
    };
    // Four points following the conic Q through p_1 = (0:0:1); the chart
    // centers make the composite equal (x*y^4 + y^2 : y : 1).
    push(ChartStep::OnY, Rational(0), Rational(0));
    push(ChartStep::OnY, Rational(0), Rational(0));
    push(ChartStep::OnY, Rational(1), Rational(0));
    push(ChartStep::OnY, Rational(0), Rational(0));
    // n points along E_4: composite (x, x^n y).
    for (int i = 0; i < n; ++i) push(ChartStep::OnX, Rational(0), Rational(0));
    // n free points: centers (0, a_i), composite (x, x^i y + a_1 + a_2 x + ...).
    for (int i = 0; i < n; ++i) push(ChartStep::OnX, Rational(0), a[i]);
    return t;
}

ChartTower transport_tower(const ChartTower& t, const Rational& lambda, const Rational& mu) {
    if (lambda == 0 || lambda == 1)
        throw ConfigError("transport_tower: lambda must differ from 0 and 1");
    if (mu == 0) throw ConfigError("transport_tower: mu must be nonzero");
    std::vector<Rational> b(t.params.size());
    Rational lam_pow(1), mu_pow = mu;  // lambda^i, mu^(2i-1)
    for (std::size_t i = 0; i < t.params.size(); ++i) {
        lam_pow *= lambda;
        if (i > 0) mu_pow *= mu * mu;
        b[i] = t.params[i] / (lam_pow * mu_pow);
    }
    return build_tower(t.n, b);
}

std::vector<int> strict_multiplicities(const MPoly& F, const ChartTower& t) {
    if (F.is_zero()) throw Error("strict_multiplicities: zero polynomial");
    int zi = F.var_index("z");
    if (zi < 0) throw Error("strict_multiplicities: expected plane variables");
    MPoly g = F.substitute_value(zi, Rational(1)).with_vars(kChartVars);
    std::vector<int> mults;
    mults.reserve(t.steps.size());
    for (const auto& s : t.steps) {
        g = shift_to_center(g, s);
        int m = g.min_total_degree();
        mults.push_back(m);
        g = blowdown_substitute(g, s.dir, m);
    }
    return mults;
}

int vanishing_order(const MPoly& F, const ChartTower& t, int index) {
    if (index < 1 || index > t.length())
        throw Error("vanishing_order: index out of range");
    return strict_multiplicities(F, t)[index - 1];
}

std::vector<std::vector<bool>> proximity_table(const ChartTower& t) {
    const int m = t.length();
    std::vector<std::vector<bool>> prox(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) {
        // Local equation of E_{i+1} in chart i+1.
        MPoly e = MPoly::variable(kChartVars, t.steps[i].dir == ChartStep::OnY ? "y" : "x");
        for (int j = i + 1; j < m; ++j) {
            e = shift_to_center(e, t.steps[j]);
            int mu = e.min_total_degree();
            if (mu > 1) throw Error("proximity_table: exceptional curve became singular");
            if (mu == 0 && e.is_constant()) break;  // left the chart chain
            prox[j][i] = (mu == 1);
            e = blowdown_substitute(e, t.steps[j].dir, mu);
            e = e.primitive_normalized();
        }
    }
    return prox;
}

std::pair<MPoly, MPoly> composite_chart(const ChartTower& t, int upto) {
    if (upto < 1 || upto > t.length()) throw Error("composite_chart: bad index");
    MPoly wx = MPoly::variable(kChartVars, "x");
    MPoly wy = MPoly::variable(kChartVars, "y");
    for (int i = upto; i >= 1; --i) {
        const ChartStep& s = t.steps[i - 1];
        MPoly nx, ny;
        if (s.dir == ChartStep::OnY) {
            nx = MPoly::constant(kChartVars, s.cx) + wx * wy;
            ny = MPoly::constant(kChartVars, s.cy) + wy;
        } else {
            nx = MPoly::constant(kChartVars, s.cx) + wx;
            ny = MPoly::constant(kChartVars, s.cy) + wx * wy;
        }
        wx = nx;
        wy = ny;
    }
    return {wx, wy};
}

QMatrix multiplicity_conditions(int degree, const ChartTower& t,
                                const std::vector<int>& mult,
                                std::vector<Exponents>* monomials) {
    if (static_cast<int>(mult.size()) != t.length())
        throw Error("multiplicity_conditions: multiplicity vector length mismatch");
    auto monos = trivariate_monomials(degree);
    if (monomials) *monomials = monos;

    std::size_t rows = 0;
    for (int m : mult) {
        if (m < 0) throw Error("multiplicity_conditions: negative multiplicity");
        rows += static_cast<std::size_t>(m) * (m + 1) / 2;
    }
    QMatrix cond(rows, QVector(monos.size(), Rational(0)));

    for (std::size_t col = 0; col < monos.size(); ++col) {
        const auto& e = monos[col];
        MPoly g = MPoly::monomial(kChartVars, {e[0], e[1]}, Rational(1));
        // z^k disappears in the z = 1 chart.
        std::size_t row = 0;
        for (int i = 0; i < t.length(); ++i) {
            const ChartStep& s = t.steps[i];
            const int m = mult[i];
            g = shift_to_center(g, s);
            if (m > 0) {
                // Taylor coefficients of total degree < m, fixed order.
                MPoly kept(kChartVars);
                for (const auto& [te, tc] : g.terms())
                    if (te[0] + te[1] >= m) kept.add_term(te, tc);
                for (int d = 0; d < m; ++d) {
                    for (int a = d; a >= 0; --a) {
                        cond[row++][col] = g.coeff({a, d - a});
                    }
                }
                g = blowdown_substitute(kept, s.dir, m);
            } else {
                g = blowdown_substitute(g, s.dir, 0);
            }
        }
    }
    return cond;
}

} // namespace cremona
