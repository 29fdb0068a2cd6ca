#include "cremona/resultant.hpp"

#include <algorithm>

#include "cremona/errors.hpp"
#include "cremona/linalg.hpp"

namespace cremona {

namespace {

// Sylvester matrix from dense coefficient lists (ascending in the
// eliminated variable), entries of type T.
template <typename T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& a, const std::vector<T>& b,
                                      const T& zero) {
    const int na = static_cast<int>(a.size()) - 1;
    const int nb = static_cast<int>(b.size()) - 1;
    const int n = na + nb;
    std::vector<std::vector<T>> m(n, std::vector<T>(n, zero));
    for (int r = 0; r < nb; ++r)
        for (int i = 0; i <= na; ++i) m[r][r + (na - i)] = a[i];
    for (int r = 0; r < na; ++r)
        for (int i = 0; i <= nb; ++i) m[nb + r][r + (nb - i)] = b[i];
    return m;
}

// Fraction-free determinant over the polynomial ring.
MPoly poly_det(std::vector<std::vector<MPoly>> m, const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    if (n == 0) return MPoly::constant(vars, Rational(1));
    int sign = 1;
    MPoly prev = MPoly::constant(vars, Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t sel = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { sel = i; break; }
            if (sel == n) return MPoly::zero(vars);
            std::swap(m[k], m[sel]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = t.divide_exact(prev);
                if (!q) throw Error("poly_det: inexact Bareiss division");
                m[i][j] = *q;
            }
            m[i][k] = MPoly::zero(vars);
        }
        prev = m[k][k];
    }
    MPoly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

std::vector<MPoly> dense_coeffs(const MPoly& p, int var) {
    std::vector<MPoly> out(static_cast<std::size_t>(p.degree_in(var)) + 1,
                           MPoly::zero(p.vars()));
    for (const auto& [d, c] : p.split_by_var(var)) out[d] = c;
    return out;
}

} // namespace

std::vector<Rational> interpolate_univariate(const std::vector<Rational>& nodes,
                                             const std::vector<Rational>& values) {
    const std::size_t n = nodes.size();
    if (values.size() != n || n == 0) throw Error("interpolation size mismatch");
    // Newton divided differences.
    std::vector<Rational> dd = values;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
    // Expand Newton form to monomial coefficients.
    std::vector<Rational> coeffs(n, Rational(0));
    std::vector<Rational> base(n, Rational(0));  // running product polynomial
    base[0] = 1;
    std::size_t blen = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < blen; ++j) coeffs[j] += dd[i] * base[j];
        if (i + 1 < n) {
            // base *= (x - nodes[i])
            for (std::size_t j = blen; j-- > 0;) {
                base[j + 1] += base[j];
                base[j] *= -nodes[i];
            }
            ++blen;
        }
    }
    return coeffs;
}

MPoly resultant_univar(const MPoly& p, const MPoly& q, const std::string& var) {
    if (p.is_zero() || q.is_zero()) throw Error("resultant of zero polynomial");
    if (p.vars() != q.vars()) throw Error("resultant: variable list mismatch");
    int v = p.var_index(var);
    if (v < 0) throw Error("resultant: unknown variable '" + var + "'");
    const int np = p.degree_in(v), nq = q.degree_in(v);
    if (np == 0 && nq == 0)
        throw Error("resultant: both inputs constant in '" + var + "'");
    if (np == 0) return p.pow(nq);
    if (nq == 0) return q.pow(np);

    auto ca = dense_coeffs(p, v);
    auto cb = dense_coeffs(q, v);

    // Count the other variables that actually occur.
    std::vector<int> others;
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        if (static_cast<int>(i) == v) continue;
        if (p.degree_in(static_cast<int>(i)) > 0 || q.degree_in(static_cast<int>(i)) > 0)
            others.push_back(static_cast<int>(i));
    }

    int hp = 0, hq = 0;
    const bool homog = p.is_homogeneous(&hp) && q.is_homogeneous(&hq);
    const int n = np + nq;

    if (homog && others.size() == 2 && n > 6) {
        // Interpolate: the resultant is homogeneous in the two remaining
        // variables of degree nq*hp + np*hq - np*nq (or identically 0).
        const int ya = others[0], za = others[1];
        const int dr = nq * hp + np * hq - np * nq;
        std::vector<Rational> nodes, vals;
        nodes.reserve(dr + 1);
        for (int k = 0; k <= dr; ++k) {
            Rational tau(k);
            std::vector<Rational> ea(ca.size()), eb(cb.size());
            std::vector<Rational> point(p.vars().size(), Rational(0));
            point[ya] = tau;
            point[za] = 1;
            for (std::size_t i = 0; i < ca.size(); ++i) ea[i] = ca[i].eval(point);
            for (std::size_t i = 0; i < cb.size(); ++i) eb[i] = cb[i].eval(point);
            auto m = sylvester<Rational>(ea, eb, Rational(0));
            nodes.push_back(tau);
            vals.push_back(det(std::move(m)));
        }
        auto coeffs = interpolate_univariate(nodes, vals);
        MPoly r(p.vars());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            Exponents e(p.vars().size(), 0);
            e[ya] = static_cast<int>(i);
            e[za] = dr - static_cast<int>(i);
            r.add_term(e, coeffs[i]);
        }
        return r;
    }

    auto m = sylvester<MPoly>(ca, cb, MPoly::zero(p.vars()));
    return poly_det(std::move(m), p.vars());
}

MPoly binary_form_resultant(const MPoly& U, const MPoly& V, int s, int t) {
    if (U.vars() != V.vars()) throw Error("binary_form_resultant: variable mismatch");
    const auto& vars = U.vars();
    auto bidegree = [&](const MPoly& p) {
        int d = -1;
        for (const auto& [e, c] : p.terms()) {
            int b = e[s] + e[t];
            if (d < 0) d = b;
            else if (b != d) throw Error("binary_form_resultant: not (s,t)-homogeneous");
        }
        return d;
    };
    const int du = bidegree(U), dv = bidegree(V);
    if (du <= 0 || dv <= 0) throw Error("binary_form_resultant: degenerate form");

    // Coefficients of s^i t^(d-i), ascending in i, over the remaining vars.
    auto coeff_list = [&](const MPoly& p, int d) {
        std::vector<MPoly> out(static_cast<std::size_t>(d) + 1, MPoly::zero(vars));
        for (const auto& [e, c] : p.terms()) {
            Exponents e2 = e;
            int i = e[s];
            e2[s] = 0;
            e2[t] = 0;
            out[i].add_term(e2, c);
        }
        return out;
    };
    auto cu = coeff_list(U, du);
    auto cv = coeff_list(V, dv);

    // Remaining variables actually used.
    std::vector<int> others;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (static_cast<int>(i) == s || static_cast<int>(i) == t) continue;
        bool used = false;
        for (const auto& c : cu)
            if (c.degree_in(static_cast<int>(i)) > 0) used = true;
        for (const auto& c : cv)
            if (c.degree_in(static_cast<int>(i)) > 0) used = true;
        if (used) others.push_back(static_cast<int>(i));
    }
    // The interpolation path needs linear entries, which make the
    // determinant homogeneous of degree du + dv in the remaining
    // variables (the implicitization pencils have exactly this shape).
    const int dr = du + dv;
    if (others.size() > 3) throw Error("binary_form_resultant: too many parameters");
    int max_entry_deg = 0;
    for (const auto& c : cu) max_entry_deg = std::max(max_entry_deg, c.degree());
    for (const auto& c : cv) max_entry_deg = std::max(max_entry_deg, c.degree());

    if (others.size() <= 1 || max_entry_deg > 1) {
        auto m = sylvester<MPoly>(cu, cv, MPoly::zero(vars));
        return poly_det(std::move(m), vars);
    }

    // Tensor interpolation over (others[0], others[1]) with others[2]
    // (when present) set to 1 and the result homogenized back.
    const int xa = others[0], yb = others[1];
    const int za = others.size() == 3 ? others[2] : -1;
    const int nn = dr + 1;
    std::vector<std::vector<Rational>> grid(nn, std::vector<Rational>(nn));
    std::vector<Rational> nodes(nn);
    for (int i = 0; i < nn; ++i) nodes[i] = Rational(i);
    for (int i = 0; i < nn; ++i) {
        for (int j = 0; j < nn; ++j) {
            std::vector<Rational> point(vars.size(), Rational(0));
            point[xa] = nodes[i];
            point[yb] = nodes[j];
            if (za >= 0) point[za] = 1;
            std::vector<Rational> ea(cu.size()), eb(cv.size());
            for (std::size_t k = 0; k < cu.size(); ++k) ea[k] = cu[k].eval(point);
            for (std::size_t k = 0; k < cv.size(); ++k) eb[k] = cv[k].eval(point);
            auto m = sylvester<Rational>(ea, eb, Rational(0));
            grid[i][j] = det(std::move(m));
        }
    }
    // Interpolate rows in the second variable, then columns in the first.
    std::vector<std::vector<Rational>> rowc(nn);
    for (int i = 0; i < nn; ++i) rowc[i] = interpolate_univariate(nodes, grid[i]);
    MPoly r(vars);
    for (int j = 0; j < nn; ++j) {
        std::vector<Rational> colvals(nn);
        for (int i = 0; i < nn; ++i) colvals[i] = rowc[i][j];
        auto cc = interpolate_univariate(nodes, colvals);
        for (int i = 0; i < nn; ++i) {
            if (cc[i] == 0) continue;
            if (i + j > dr)
                throw Error("binary_form_resultant: interpolation degree overflow");
            Exponents e(vars.size(), 0);
            e[xa] = i;
            e[yb] = j;
            if (za >= 0) e[za] = dr - i - j;
            else if (i + j != dr)
                throw Error("binary_form_resultant: non-homogeneous result");
            r.add_term(e, cc[i]);
        }
    }
    return r;
}

} // namespace cremona
