#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/rational.hpp"

namespace cremona {

using Exponents = std::vector<int>;

// Canonical term order: graded lexicographic, earlier variables larger
// (x > y > z). "Greater" terms come first when iterating, so begin() is
// the leading term.
struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        const std::size_t n = a.size() < b.size() ? a.size() : b.size();
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return a.size() > b.size();
    }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no stored zero coefficient; every exponent vector has
// length = number of variables.
class MPoly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MPoly zero(const std::vector<std::string>& vars);
    static MPoly constant(const std::vector<std::string>& vars, const Rational& c);
    static MPoly variable(const std::vector<std::string>& vars, const std::string& name);
    static MPoly monomial(const std::vector<std::string>& vars, const Exponents& e,
                          const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    int var_index(const std::string& name) const;  // -1 when absent

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()

    int degree() const;               // total degree, -1 for zero
    int degree_in(int var) const;
    int min_total_degree() const;     // multiplicity at the origin

    // Homogeneity of the nonzero terms; degree returned through `deg`.
    bool is_homogeneous(int* deg = nullptr) const;

    // Homogeneity counting only the variables at the given indices.
    bool is_homogeneous_in(const std::vector<int>& idx, int* deg = nullptr) const;

    const Exponents& leading_exponents() const;
    const Rational& leading_coeff() const;
    Rational coeff(const Exponents& e) const;

    void add_term(const Exponents& e, const Rational& c);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const Rational& c) const;
    MPoly pow(int e) const;
    bool operator==(const MPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(int var) const;

    // Substitute a single variable by a constant; the variable stays in
    // the variable list with exponent collapsed to 0.
    MPoly substitute_value(int var, const Rational& c) const;

    // Taylor shift: var -> var + c.
    MPoly shifted(int var, const Rational& c) const;

    // Reindex onto a new variable list; every used variable must exist in
    // `newvars` under the same name.
    MPoly with_vars(const std::vector<std::string>& newvars) const;

    // Coefficients as polynomials with `var` zeroed out, keyed by the
    // exponent of `var`.
    std::map<int, MPoly> split_by_var(int var) const;

    // Dense coefficient vector [c0, c1, ...]; requires all other
    // variables to have degree 0.
    std::vector<Rational> univariate_coeffs(int var) const;

    Rational eval(const std::vector<Rational>& point) const;

    // Division with remainder by a single divisor, reducing w.r.t. the
    // canonical leading term. The remainder is the normal form.
    std::pair<MPoly, MPoly> divrem(const MPoly& divisor) const;
    std::optional<MPoly> divide_exact(const MPoly& divisor) const;

    // Positive rational c such that (*this)/c has coprime integer
    // coefficients. Zero polynomial -> 0.
    Rational content() const;
    // Primitive part with positive leading coefficient.
    MPoly primitive_normalized() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void check_same_vars(const MPoly& o) const;
};

// Formal substitution var -> assignment, expanded and normalized. Every
// variable actually used by `target` must have an assignment; all
// assignment values must share one variable list, which becomes the
// result's list. Constants for unassigned result variables are fine.
MPoly poly_substitute(const MPoly& target,
                      const std::map<std::string, MPoly>& assignments);

// GCD, normalized primitive with positive leading coefficient in the
// canonical order. gcd(0,0) = 0.
MPoly gcd_poly(const MPoly& p, const MPoly& q);

// Exact coprimality certificate via line restriction: restricts the
// forms to a handful of rational lines and computes univariate gcds. A
// constant gcd on one line proves the forms have no common factor.
// Returns true when coprimality is PROVED; false means "not decided".
bool certified_coprime(const std::vector<MPoly>& polys);

// Removes the gcd of the three coordinate forms (certificate fast path,
// full PRS gcd as fallback).
std::vector<MPoly> remove_common_factor(std::vector<MPoly> coords);

} // namespace cremona
