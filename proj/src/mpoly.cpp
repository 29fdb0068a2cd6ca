#include "cremona/mpoly.hpp"

#include <algorithm>
#include <functional>

#include "cremona/errors.hpp"

namespace cremona {

MPoly MPoly::zero(const std::vector<std::string>& vars) {
    return MPoly(vars);
}

MPoly MPoly::constant(const std::vector<std::string>& vars, const Rational& c) {
    MPoly p(vars);
    if (c != 0) p.terms_[Exponents(vars.size(), 0)] = c;
    return p;
}

MPoly MPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
    MPoly p(vars);
    Exponents e(vars.size(), 0);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw Error("variable '" + name + "' not in variable list");
    e[static_cast<std::size_t>(it - vars.begin())] = 1;
    p.terms_[e] = Rational(1);
    return p;
}

MPoly MPoly::monomial(const std::vector<std::string>& vars, const Exponents& e,
                      const Rational& c) {
    if (e.size() != vars.size()) throw Error("exponent vector length mismatch");
    MPoly p(vars);
    if (c != 0) p.terms_[e] = c;
    return p;
}

int MPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int e : terms_.begin()->first)
        if (e != 0) return false;
    return true;
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int MPoly::degree() const {
    if (terms_.empty()) return -1;
    // Leading term has maximal total degree in graded order.
    int d = 0;
    for (int e : terms_.begin()->first) d += e;
    return d;
}

int MPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int MPoly::min_total_degree() const {
    if (terms_.empty()) return -1;
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        if (best < 0 || d < best) best = d;
    }
    return best;
}

bool MPoly::is_homogeneous(int* deg) const {
    if (terms_.empty()) {
        if (deg) *deg = -1;
        return true;
    }
    int d0 = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        if (d0 < 0) d0 = d;
        else if (d != d0) return false;
    }
    if (deg) *deg = d0;
    return true;
}

bool MPoly::is_homogeneous_in(const std::vector<int>& idx, int* deg) const {
    if (terms_.empty()) {
        if (deg) *deg = -1;
        return true;
    }
    int d0 = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int v : idx) d += e[v];
        if (d0 < 0) d0 = d;
        else if (d != d0) return false;
    }
    if (deg) *deg = d0;
    return true;
}

const Exponents& MPoly::leading_exponents() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& MPoly::leading_coeff() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return terms_.begin()->second;
}

Rational MPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw Error("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MPoly::check_same_vars(const MPoly& o) const {
    if (vars_ != o.vars_) throw Error("variable list mismatch in polynomial operation");
}

MPoly MPoly::operator-() const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    check_same_vars(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    check_same_vars(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_same_vars(o);
    MPoly r(vars_);
    if (terms_.empty() || o.terms_.empty()) return r;
    const MPoly& small = terms_.size() <= o.terms_.size() ? *this : o;
    const MPoly& big = terms_.size() <= o.terms_.size() ? o : *this;
    Exponents e(vars_.size());
    for (const auto& [es, cs] : small.terms_) {
        for (const auto& [eb, cb] : big.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = es[i] + eb[i];
            r.add_term(e, cs * cb);
        }
    }
    return r;
}

MPoly MPoly::scaled(const Rational& c) const {
    MPoly r(vars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw Error("negative power");
    MPoly r = constant(vars_, Rational(1));
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents e2 = e;
        e2[var] -= 1;
        r.add_term(e2, c * Rational(e[var]));
    }
    return r;
}

MPoly MPoly::substitute_value(int var, const Rational& c) const {
    MPoly r(vars_);
    for (const auto& [e, k] : terms_) {
        Rational factor = k;
        if (e[var] != 0) {
            Rational p(1);
            for (int i = 0; i < e[var]; ++i) p *= c;
            factor *= p;
        }
        Exponents e2 = e;
        e2[var] = 0;
        r.add_term(e2, factor);
    }
    return r;
}

MPoly MPoly::shifted(int var, const Rational& c) const {
    if (c == 0) return *this;
    // var -> var + c expanded with binomials, grouped by var-degree.
    int dmax = degree_in(var);
    std::vector<std::vector<Rational>> binom(dmax + 1);
    for (int d = 0; d <= dmax; ++d) {
        binom[d].assign(d + 1, Rational(0));
        binom[d][0] = 1;
        for (int j = 1; j <= d; ++j)
            binom[d][j] = binom[d][j - 1] * Rational(d - j + 1) / Rational(j);
    }
    MPoly r(vars_);
    std::vector<Rational> cpow(dmax + 1, Rational(1));
    for (int i = 1; i <= dmax; ++i) cpow[i] = cpow[i - 1] * c;
    for (const auto& [e, k] : terms_) {
        int d = e[var];
        for (int j = 0; j <= d; ++j) {
            Exponents e2 = e;
            e2[var] = d - j;
            r.add_term(e2, k * binom[d][j] * cpow[j]);
        }
    }
    return r;
}

MPoly MPoly::with_vars(const std::vector<std::string>& newvars) const {
    std::vector<int> where(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
        if (it != newvars.end()) where[i] = static_cast<int>(it - newvars.begin());
    }
    MPoly r(newvars);
    for (const auto& [e, c] : terms_) {
        Exponents e2(newvars.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (where[i] < 0)
                throw Error("variable '" + vars_[i] + "' missing from new variable list");
            e2[where[i]] = e[i];
        }
        r.add_term(e2, c);
    }
    return r;
}

std::map<int, MPoly> MPoly::split_by_var(int var) const {
    std::map<int, MPoly> out;
    for (const auto& [e, c] : terms_) {
        int d = e[var];
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, MPoly(vars_)).first;
        Exponents e2 = e;
        e2[var] = 0;
        it->second.add_term(e2, c);
    }
    return out;
}

std::vector<Rational> MPoly::univariate_coeffs(int var) const {
    std::vector<Rational> out(static_cast<std::size_t>(degree_in(var)) + 1, Rational(0));
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != var && e[i] != 0)
                throw Error("univariate_coeffs: polynomial is not univariate");
        out[e[var]] = c;
    }
    return out;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw Error("evaluation point dimension mismatch");
    // Power tables per variable up to the needed degree.
    std::vector<std::vector<Rational>> pw(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        int d = degree_in(static_cast<int>(v));
        pw[v].assign(static_cast<std::size_t>(d) + 1, Rational(1));
        for (int i = 1; i <= d; ++i) pw[v][i] = pw[v][i - 1] * point[v];
    }
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (e[v] != 0) t *= pw[v][e[v]];
        acc += t;
    }
    return acc;
}

std::pair<MPoly, MPoly> MPoly::divrem(const MPoly& divisor) const {
    check_same_vars(divisor);
    if (divisor.is_zero()) throw Error("division by zero polynomial");
    MPoly q(vars_), rem(vars_), work = *this;
    const Exponents& lead = divisor.leading_exponents();
    const Rational& lc = divisor.leading_coeff();
    auto divisible = [&](const Exponents& e) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < lead[i]) return false;
        return true;
    };
    // Classical single-divisor reduction: the leading term of the work
    // polynomial either reduces or moves to the remainder. For a single
    // divisor the normal form is order-independent.
    Exponents qe(vars_.size());
    while (!work.terms_.empty()) {
        auto it = work.terms_.begin();
        if (!divisible(it->first)) {
            rem.terms_.insert(rem.terms_.end(), *it);
            work.terms_.erase(it);
            continue;
        }
        for (std::size_t i = 0; i < qe.size(); ++i) qe[i] = it->first[i] - lead[i];
        Rational qc = it->second / lc;
        q.add_term(qe, qc);
        Exponents te(vars_.size());
        for (const auto& [de, dc] : divisor.terms_) {
            for (std::size_t i = 0; i < te.size(); ++i) te[i] = qe[i] + de[i];
            work.add_term(te, -(qc * dc));
        }
    }
    return {q, rem};
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
    check_same_vars(divisor);
    if (divisor.is_zero()) throw Error("division by zero polynomial");
    MPoly q(vars_), work = *this;
    const Exponents& lead = divisor.leading_exponents();
    const Rational& lc = divisor.leading_coeff();
    Exponents qe(vars_.size()), te(vars_.size());
    while (!work.terms_.empty()) {
        auto it = work.terms_.begin();
        // Exact division fails as soon as a leading term does not reduce.
        for (std::size_t i = 0; i < qe.size(); ++i) {
            if (it->first[i] < lead[i]) return std::nullopt;
            qe[i] = it->first[i] - lead[i];
        }
        Rational qc = it->second / lc;
        q.add_term(qe, qc);
        for (const auto& [de, dc] : divisor.terms_) {
            for (std::size_t i = 0; i < te.size(); ++i) te[i] = qe[i] + de[i];
            work.add_term(te, -(qc * dc));
        }
    }
    return q;
}

Rational MPoly::content() const {
    if (terms_.empty()) return Rational(0);
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    return make_rational(num_gcd, den_lcm);
}

MPoly MPoly::primitive_normalized() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (leading_coeff() < 0) c = -c;
    MPoly r(vars_);
    for (const auto& [e, k] : terms_) r.terms_[e] = k / c;
    return r;
}

MPoly poly_substitute(const MPoly& target,
                      const std::map<std::string, MPoly>& assignments) {
    // Determine the output variable list from the assignments.
    std::vector<std::string> out_vars;
    for (const auto& [name, value] : assignments) {
        if (out_vars.empty()) out_vars = value.vars();
        else if (out_vars != value.vars())
            throw Error("poly_substitute: assignment values use different variable lists");
    }
    if (out_vars.empty()) out_vars = target.vars();

    // Every used variable needs an assignment.
    std::vector<const MPoly*> assign(target.vars().size(), nullptr);
    for (std::size_t v = 0; v < target.vars().size(); ++v) {
        auto it = assignments.find(target.vars()[v]);
        if (it != assignments.end()) assign[v] = &it->second;
        else if (target.degree_in(static_cast<int>(v)) > 0)
            throw Error("poly_substitute: missing assignment for used variable '" +
                        target.vars()[v] + "'");
    }

    // Recursive Horner over the variable list.
    struct Ctx {
        const std::vector<const MPoly*>& assign;
        const std::vector<std::string>& out_vars;
    } ctx{assign, out_vars};

    using Term = std::pair<Exponents, Rational>;
    std::vector<Term> terms(target.terms().begin(), target.terms().end());

    std::function<MPoly(std::vector<Term>&, std::size_t)> go =
        [&](std::vector<Term>& ts, std::size_t v) -> MPoly {
        if (ts.empty()) return MPoly::zero(ctx.out_vars);
        if (v == target.vars().size()) {
            Rational acc(0);
            for (const auto& [e, c] : ts) acc += c;
            return MPoly::constant(ctx.out_vars, acc);
        }
        // Group by exponent of variable v, descending.
        std::map<int, std::vector<Term>> groups;
        for (auto& t : ts) groups[t.first[v]].push_back(t);
        if (groups.size() == 1 && groups.begin()->first == 0)
            return go(groups.begin()->second, v + 1);
        const MPoly* X = ctx.assign[v];
        if (X == nullptr) throw Error("poly_substitute: internal missing assignment");
        // Horner from highest exponent down.
        MPoly acc = MPoly::zero(ctx.out_vars);
        int prev = -1;
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            if (prev >= 0)
                for (int i = 0; i < prev - it->first; ++i) acc = acc * (*X);
            acc = acc + go(it->second, v + 1);
            prev = it->first;
        }
        for (int i = 0; i < prev; ++i) acc = acc * (*X);
        return acc;
    };
    return go(terms, 0);
}

namespace {

// Pseudo-remainder of a by b w.r.t. variable `var` (degrees in var).
MPoly pseudo_rem(const MPoly& a, const MPoly& b, int var) {
    int db = b.degree_in(var);
    auto bs = b.split_by_var(var);
    MPoly lb = bs.at(db);  // leading coefficient of b in var (var zeroed)
    MPoly r = a;
    int dr = r.degree_in(var);
    while (!r.is_zero() && (dr = r.degree_in(var)) >= db) {
        auto rs = r.split_by_var(var);
        MPoly lr = rs.at(dr);
        Exponents shift(a.vars().size(), 0);
        shift[var] = dr - db;
        MPoly mono = MPoly::monomial(a.vars(), shift, Rational(1));
        r = r * lb - b * (lr * mono);
        if (r.degree_in(var) >= dr && !r.is_zero())
            throw Error("pseudo_rem failed to reduce degree");
    }
    return r;
}

// Content of p viewed in R[var], R = polynomials in the other variables.
MPoly content_in_var(const MPoly& p, int var) {
    MPoly g = MPoly::zero(p.vars());
    for (const auto& [d, c] : p.split_by_var(var)) g = gcd_poly(g, c);
    return g;
}

} // namespace

MPoly gcd_poly(const MPoly& p, const MPoly& q) {
    if (p.is_zero()) return q.primitive_normalized();
    if (q.is_zero()) return p.primitive_normalized();
    if (p.vars() != q.vars()) throw Error("gcd_poly: variable list mismatch");

    // Main variable: first with positive degree in either input.
    int var = -1;
    for (std::size_t v = 0; v < p.vars().size(); ++v) {
        if (p.degree_in(static_cast<int>(v)) > 0 || q.degree_in(static_cast<int>(v)) > 0) {
            var = static_cast<int>(v);
            break;
        }
    }
    if (var < 0) return MPoly::constant(p.vars(), Rational(1));  // both constants

    MPoly cp = content_in_var(p, var);
    MPoly cq = content_in_var(q, var);
    MPoly cont = gcd_poly(cp, cq);

    // Primitive with respect to both the coefficient polynomials and the
    // rational content; without the latter the remainder sequence
    // coefficients grow doubly exponentially.
    MPoly a = p.divide_exact(cp)->primitive_normalized();
    MPoly b = q.divide_exact(cq)->primitive_normalized();
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);

    // Primitive PRS.
    while (true) {
        if (b.is_zero()) {
            MPoly g = a.primitive_normalized();
            return (cont * g).primitive_normalized();
        }
        if (b.degree_in(var) == 0) {
            // b is a unit in R[var] up to content already removed.
            return cont.primitive_normalized();
        }
        MPoly r = pseudo_rem(a, b, var);
        a = b;
        if (r.is_zero()) b = r;
        else {
            MPoly cr = content_in_var(r, var);
            b = r.divide_exact(cr)->primitive_normalized();
        }
    }
}

bool certified_coprime(const std::vector<MPoly>& polys) {
    if (polys.empty()) return false;
    const auto& vars = polys[0].vars();
    if (vars.size() < 2) return false;
    // Restrict to lines s -> base + s*dir in the variable space; a
    // degree-0 joint gcd of the restrictions proves global coprimality.
    static const long bases[][3] = {{1, 2, 3}, {5, -3, 2}, {-7, 11, 1}};
    static const long dirs[][3] = {{3, 5, -7}, {1, 1, 2}, {2, -5, 9}};
    std::vector<std::string> svar = {"s"};
    for (int trial = 0; trial < 3; ++trial) {
        MPoly joint = MPoly::zero(svar);
        bool degenerate = false;
        for (const auto& f : polys) {
            std::map<std::string, MPoly> sub;
            for (std::size_t v = 0; v < vars.size(); ++v) {
                long b = bases[trial][v % 3], d = dirs[trial][v % 3];
                MPoly line = MPoly::constant(svar, Rational(b)) +
                             MPoly::variable(svar, "s").scaled(Rational(d));
                sub[vars[v]] = line;
            }
            MPoly restricted = poly_substitute(f, sub);
            if (restricted.is_zero()) {
                degenerate = true;
                break;
            }
            joint = gcd_poly(joint, restricted);
        }
        if (!degenerate && joint.degree() == 0) return true;
    }
    return false;
}

std::vector<MPoly> remove_common_factor(std::vector<MPoly> coords) {
    if (coords.empty()) return coords;
    if (certified_coprime(coords)) return coords;
    MPoly g = MPoly::zero(coords[0].vars());
    for (const auto& c : coords) g = gcd_poly(g, c);
    if (g.degree() <= 0) return coords;
    for (auto& c : coords) {
        auto q = c.divide_exact(g);
        if (!q) throw Error("remove_common_factor: inexact division by gcd");
        c = *q;
    }
    return coords;
}

} // namespace cremona
