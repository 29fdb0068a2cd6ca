#include "cremona/certify.hpp"

#include <algorithm>

#include "cremona/errors.hpp"
#include "cremona/resultant.hpp"
#include "cremona/rng.hpp"
#include "cremona/textio.hpp"

namespace cremona {

namespace {

const std::vector<std::string> kK = {"k"};

nlohmann::json point_json(const ProjPoint& p) { return p.to_string(); }

// Dense univariate division over Q[k]: returns (quotient, remainder).
std::pair<MPoly, MPoly> kdivmod(const MPoly& a, const MPoly& b) {
    return a.divrem(b);
}

using u64 = std::uint64_t;

u64 mod_pow(u64 base, u64 exp, u64 p) {
    unsigned __int128 acc = 1, b = base % p;
    while (exp) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<u64>(acc);
}

u64 eval_mod(const MPoly& f, const std::array<u64, 3>& pt, u64 p) {
    unsigned __int128 acc = 0;
    for (const auto& [e, c] : f.terms()) {
        u64 num = mpz_fdiv_ui(c.get_num().get_mpz_t(), p);
        u64 den = mpz_fdiv_ui(c.get_den().get_mpz_t(), p);
        unsigned __int128 t =
            static_cast<unsigned __int128>(num) * mod_pow(den, p - 2, p) % p;
        for (int v = 0; v < 3; ++v)
            if (e[v]) t = t * mod_pow(pt[v], static_cast<u64>(e[v]), p) % p;
        acc = (acc + t) % p;
    }
    return static_cast<u64>(acc);
}

// Probabilistic check of psi o phi = phi' o f by cross-multiplied
// coordinate evaluation at random points modulo word-size primes.
bool modular_composition_witness(const RationalMap& psi, const RationalMap& phi,
                                 const RationalMap& phi_prime, const RationalMap& f,
                                 std::uint64_t seed, int points_per_prime) {
    static const u64 primes[] = {2305843009213693951ULL, 4611686018427387847ULL,
                                 4611686018427387817ULL};
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (u64 p : primes) {
        for (int s = 0; s < points_per_prime; ++s) {
            std::array<u64, 3> pt = {rng.next() % p, rng.next() % p, 1};
            std::array<u64, 3> u, w, lhs, rhs;
            for (int i = 0; i < 3; ++i) u[i] = eval_mod(phi.coord(i), pt, p);
            for (int i = 0; i < 3; ++i) lhs[i] = eval_mod(psi.coord(i), u, p);
            for (int i = 0; i < 3; ++i) w[i] = eval_mod(f.coord(i), pt, p);
            for (int i = 0; i < 3; ++i) rhs[i] = eval_mod(phi_prime.coord(i), w, p);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    unsigned __int128 a =
                        static_cast<unsigned __int128>(lhs[i]) * rhs[j] % p;
                    unsigned __int128 b =
                        static_cast<unsigned __int128>(lhs[j]) * rhs[i] % p;
                    if (a != b) return false;
                }
        }
    }
    return true;
}

} // namespace

std::string cluster_note() {
    return "cluster note: the chart tower places p5 at the intersection of the strict "
           "conic transform and E4 (the conic meets E5 in the dual graph); the "
           "intersection data read off the charts is the operational ground truth.";
}

ProjAut AutFamily::member(const Rational& k) const {
    if (k == 0) throw ConfigError("AutFamily: parameter must be nonzero");
    QMatrix m(3, QVector(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = matrix[i][j].eval({k});
    return ProjAut(m);
}

AutFamily automorphism_family(const PlaneCurve& line, const PlaneCurve& conic,
                              const ProjPoint& p1) {
    if (!(line.equation == standard_line()) || !(conic.equation == standard_conic()) ||
        !(p1 == base_point()))
        throw StructuralError("automorphism_family: expects the standard line, conic and point");

    // Unknown matrix with a(L) = L (last row (0,0,m22)) and a(p1) = p1
    // (last column (0,0,m22)) already imposed; the conic condition fixes
    // the rest. Work symbolically in the remaining entries.
    const std::vector<std::string> V = {"x", "y", "z", "m00", "m01", "m10", "m11", "m22"};
    auto v = [&](const std::string& n) { return MPoly::variable(V, n); };
    MPoly ax = v("m00") * v("x") + v("m01") * v("y");
    MPoly ay = v("m10") * v("x") + v("m11") * v("y");
    MPoly az = v("m22") * v("z");
    MPoly image_conic = ax * az - ay * ay;

    // Coefficients of the conic monomials as polynomials in the m's.
    auto coeff_of = [&](int i, int j, int k) {
        MPoly out(V);
        for (const auto& [e, c] : image_conic.terms())
            if (e[0] == i && e[1] == j && e[2] == k) {
                Exponents rest = e;
                rest[0] = rest[1] = rest[2] = 0;
                out.add_term(rest, c);
            }
        return out;
    };
    // a(Q) = c Q forces: coeff(x^2) = -m10^2 = 0, coeff(yz) = m01 m22 = 0,
    // coeff(xy) = -2 m10 m11 = 0, and m11^2 = m00 m22 (from y^2 vs xz).
    if (!(coeff_of(2, 0, 0) == -(v("m10") * v("m10"))))
        throw StructuralError("automorphism_family: unexpected x^2 coefficient");
    if (!(coeff_of(0, 1, 1) == v("m01") * v("m22")))
        throw StructuralError("automorphism_family: unexpected yz coefficient");
    if (!(coeff_of(1, 1, 0) == -(v("m10") * v("m11")).scaled(Rational(2))))
        throw StructuralError("automorphism_family: unexpected xy coefficient");
    if (!(coeff_of(1, 0, 1) == v("m00") * v("m22")))
        throw StructuralError("automorphism_family: unexpected xz coefficient");
    if (!(coeff_of(0, 2, 0) == -(v("m11") * v("m11"))))
        throw StructuralError("automorphism_family: unexpected y^2 coefficient");
    // Over a field: m10 = 0 and (m22 invertible) m01 = 0; normalizing
    // m22 = 1 leaves m00 = m11^2 with one free parameter k = m11.

    AutFamily fam;
    MPoly K = MPoly::variable(kK, "k");
    MPoly zero = MPoly::zero(kK);
    MPoly one = MPoly::constant(kK, Rational(1));
    fam.matrix = {{{K * K, zero, zero}, {zero, K, zero}, {zero, zero, one}}};

    // Symbolic verification of the three defining properties and the
    // group law.
    const std::vector<std::string> XYZK = {"x", "y", "z", "k"};
    auto w = [&](const std::string& n) { return MPoly::variable(XYZK, n); };
    MPoly gx = w("k") * w("k") * w("x");
    MPoly gy = w("k") * w("y");
    MPoly gz = w("z");
    // a(Q) = Q up to the scalar k^2.
    MPoly conic_k = w("x") * w("z") - w("y") * w("y");
    if (!(gx * gz - gy * gy == w("k") * w("k") * conic_k))
        throw StructuralError("automorphism_family: conic preservation failed");
    // Group law F(k) F(kp) = F(k kp).
    const std::vector<std::string> KK = {"k", "kp"};
    MPoly k1 = MPoly::variable(KK, "k"), k2 = MPoly::variable(KK, "kp");
    if (!(k1 * k1 * (k2 * k2) == (k1 * k2) * (k1 * k2)))
        throw StructuralError("automorphism_family: group law failed");

    // Specialization at k = 1 is the identity.
    ProjAut id = fam.member(Rational(1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (id.m[i][j] != (i == j ? 1 : 0))
                throw StructuralError("automorphism_family: k = 1 is not the identity");
    return fam;
}

std::vector<MPoly> chart_constraints(const ChartTower& source,
                                     const ChartTower& transported) {
    if (source.n != transported.n)
        throw Error("chart_constraints: parameter counts differ");
    std::vector<MPoly> out;
    MPoly K = MPoly::variable(kK, "k");
    for (int i = 1; i <= source.n; ++i) {
        const Rational& ai = source.params[i - 1];
        const Rational& bi = transported.params[i - 1];
        if (ai == 0 && bi == 0) continue;  // no condition from this level
        out.push_back(K.pow(2 * i - 1).scaled(bi) - MPoly::constant(kK, ai));
    }
    return out;
}

EuclidChain euclid_chain(const std::vector<MPoly>& polys) {
    EuclidChain chain;
    MPoly g = MPoly::zero(kK);
    for (const auto& p : polys) {
        chain.sequence.push_back(p);
        MPoly a = g, b = p;
        // Univariate Euclid, recording every remainder.
        while (!b.is_zero()) {
            auto [q, r] = kdivmod(a, b);
            (void)q;
            if (!a.is_zero() && a.degree() >= b.degree() && !r.is_zero())
                chain.sequence.push_back(r);
            a = b;
            b = r;
        }
        g = a.is_zero() ? a : a.primitive_normalized();
    }
    chain.gcd = g;
    return chain;
}

Certificate nonequivalence_certificate(const ConstructionConfig& cfg,
                                       const ChartTower& source,
                                       const ChartTower& transported) {
    Certificate cert;
    cert.kind = "NonEquivalence";
    cert.evidence["lambda"] = cfg.lambda.get_str();
    cert.evidence["mu"] = cfg.mu.get_str();
    cert.evidence["n"] = cfg.n;
    cert.evidence["relies_on"] =
        "constraint transport of the linear family through the charts; the "
        "one-parameter automorphism family (k^2 x : k y : z)";

    if (!cfg.certificate_grade()) {
        cert.verdict = "inconclusive";
        cert.evidence["reason"] = "the argument needs n >= 2 and "
                                  "a_n, a_{n-1} nonzero";
        return cert;
    }

    // Constraints for the top two parameter levels i = n-1, n.
    auto all_constraints = chart_constraints(source, transported);
    std::vector<MPoly> top;
    MPoly K = MPoly::variable(kK, "k");
    for (int i = cfg.n - 1; i <= cfg.n; ++i) {
        const Rational& ai = source.params[i - 1];
        const Rational& bi = transported.params[i - 1];
        top.push_back(K.pow(2 * i - 1).scaled(bi) - MPoly::constant(kK, ai));
    }
    EuclidChain chain = euclid_chain(top);

    nlohmann::json cons = nlohmann::json::array();
    for (const auto& p : all_constraints) cons.push_back(poly_to_text(p));
    cert.evidence["constraints"] = cons;
    nlohmann::json seq = nlohmann::json::array();
    for (const auto& p : chain.sequence) seq.push_back(poly_to_text(p));
    cert.evidence["euclid_chain"] = seq;
    cert.evidence["gcd"] = poly_to_text(chain.gcd);

    const bool pass = !chain.gcd.is_zero() && chain.gcd.degree() == 0;
    cert.verdict = pass ? "pass" : "fail";
    if (pass)
        cert.evidence["conclusion"] =
            "the two constraint polynomials have no common root in any field "
            "extension: no automorphism of the family sends one cluster to the other";
    return cert;
}

namespace {

// Rational roots of a univariate polynomial (num/den over divisors of the
// extreme coefficients).
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
    std::vector<Rational> roots;
    int lo = 0, hi = static_cast<int>(coeffs.size()) - 1;
    while (lo <= hi && coeffs[lo] == 0) ++lo;  // factor out x^lo (root 0)
    while (hi >= lo && coeffs[hi] == 0) --hi;
    if (lo > hi) return roots;
    if (lo > 0) roots.push_back(Rational(0));
    if (hi == lo) return roots;
    // Clear denominators.
    Integer den(1);
    for (int i = lo; i <= hi; ++i)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), coeffs[i].get_den().get_mpz_t());
    std::vector<Integer> c;
    for (int i = lo; i <= hi; ++i) c.push_back(Integer(coeffs[i] * Rational(den)));
    if (hi - lo == 1) {
        // Linear: the root is explicit, no divisor enumeration.
        roots.push_back(make_rational(-c[0], c[1]));
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    Integer a0 = c.front(), an = c.back();
    if (a0 < 0) a0 = -a0;
    if (an < 0) an = -an;
    // Bounded trial division; candidates beyond the cap are reported as
    // unresolved by the caller rather than searched forever.
    auto divisors = [](const Integer& v) {
        std::vector<Integer> out;
        long tried = 0;
        for (Integer d(1); d * d <= v && tried < 2000000; ++d, ++tried) {
            if (v % d == 0) {
                out.push_back(d);
                out.push_back(v / d);
            }
        }
        return out;
    };
    auto eval_at = [&](const Rational& r) {
        Rational acc(0);
        for (int i = hi; i >= lo; --i) acc = acc * r + coeffs[i];
        return acc;
    };
    for (const Integer& p : divisors(a0))
        for (const Integer& q : divisors(an))
            for (int sign : {1, -1}) {
                Rational cand = make_rational(p * sign, q);
                if (eval_at(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Local multiplicity of a plane curve at a point.
int local_multiplicity(const MPoly& eq, const ProjPoint& p) {
    int chart = 2;
    while (chart >= 0 && p.c[chart] == 0) --chart;
    MPoly g = eq.substitute_value(chart, Rational(1));
    int shifted = 0;
    for (int v = 0; v < 3; ++v) {
        if (v == chart) continue;
        g = g.shifted(v, p.c[v]);
        ++shifted;
    }
    (void)shifted;
    // Minimal total degree in the two affine variables.
    int best = -1;
    for (const auto& [e, c] : g.terms()) {
        int d = 0;
        for (int v = 0; v < 3; ++v)
            if (v != chart) d += e[v];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

bool is_singular_at(const std::array<MPoly, 3>& partials, const ProjPoint& p) {
    for (const auto& f : partials)
        if (f.eval({p.c[0], p.c[1], p.c[2]}) != 0) return false;
    return true;
}

} // namespace

Certificate unicuspidal_certificate(const PlaneCurve& curve, const std::string& name) {
    Certificate cert;
    cert.kind = "Unicuspidal";
    cert.evidence["curve"] = name;
    cert.evidence["equation"] = poly_to_text(curve.equation);

    std::array<MPoly, 3> partials = {curve.equation.derivative(0),
                                     curve.equation.derivative(1),
                                     curve.equation.derivative(2)};
    std::vector<MPoly> nz;
    for (const auto& p : partials)
        if (!p.is_zero()) nz.push_back(p);
    if (nz.size() < 2) {
        cert.verdict = "fail";
        cert.evidence["reason"] = "degenerate gradient";
        return cert;
    }

    // Pairwise resultants eliminating x project the singular locus to
    // (y : z); the projection center (1:0:0) is checked separately.
    std::vector<MPoly> res;
    bool shared_factor = false;
    for (std::size_t i = 0; i < nz.size(); ++i)
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
            if (nz[i].degree_in(0) == 0 && nz[j].degree_in(0) == 0) continue;
            MPoly r = resultant_univar(nz[i], nz[j], "x");
            if (r.is_zero()) shared_factor = true;
            else res.push_back(r);
        }
    if (shared_factor || res.empty()) {
        cert.verdict = "fail";
        cert.evidence["reason"] = "partial derivatives share a factor";
        return cert;
    }
    MPoly g = res[0];
    for (std::size_t i = 1; i < res.size(); ++i) g = gcd_poly(g, res[i]);

    // Squarefree projection support.
    MPoly gs = g;
    if (g.degree() > 0) {
        MPoly d1 = gcd_poly(g, g.derivative(1));
        MPoly d2 = gcd_poly(d1, g.derivative(2));
        if (d2.degree() > 0) gs = *g.divide_exact(d2);
        gs = gs.primitive_normalized();
    }

    std::vector<ProjPoint> found;
    int unresolved = 0;
    auto record = [&](const ProjPoint& p) {
        if (std::find(found.begin(), found.end(), p) == found.end()) found.push_back(p);
    };

    // The projection center.
    ProjPoint center(Rational(1), Rational(0), Rational(0));
    if (is_singular_at(partials, center)) record(center);

    if (gs.degree() > 0) {
        // Candidate (y : z) projections: z != 0 gives a univariate in y;
        // the direction (1 : 0) shows as a degree drop in y.
        MPoly gy = gs.substitute_value(2, Rational(1));
        std::vector<Rational> ycoeffs(static_cast<std::size_t>(gs.degree()) + 1, Rational(0));
        for (const auto& [e, c] : gy.terms()) ycoeffs[e[1]] = c;
        std::vector<Rational> yroots = rational_roots(ycoeffs);
        std::vector<std::pair<Rational, Rational>> candidates;
        for (const auto& y0 : yroots) candidates.push_back({y0, Rational(1)});
        if (gs.degree_in(1) < gs.degree()) candidates.push_back({Rational(1), Rational(0)});

        int rational_candidate_roots = static_cast<int>(candidates.size());
        int distinct_projections = gs.degree();  // squarefree form: distinct roots
        if (gs.degree_in(1) == gs.degree() && gs.coeff({0, gs.degree(), 0}) != 0) {
            // no root at (1:0); distinct finite roots only
        }
        unresolved = distinct_projections - rational_candidate_roots;
        if (unresolved < 0) unresolved = 0;

        for (const auto& [y0, z0] : candidates) {
            // Solve for x over this projection.
            MPoly h = MPoly::zero(plane_vars());
            bool first = true;
            for (const auto& p : nz) {
                MPoly px = p.substitute_value(1, y0).substitute_value(2, z0);
                if (px.is_zero()) continue;
                h = first ? px : gcd_poly(h, px);
                first = false;
            }
            if (first) {
                // Every partial vanishes identically on the line: the
                // whole pencil direction is singular. Not unicuspidal.
                cert.verdict = "fail";
                cert.evidence["reason"] = "one-dimensional singular locus";
                return cert;
            }
            if (h.degree_in(0) == 0) continue;  // spurious projection
            std::vector<Rational> xroots = rational_roots(h.univariate_coeffs(0));
            int sq_deg = h.degree_in(0);
            MPoly hs = gcd_poly(h, h.derivative(0));
            if (hs.degree_in(0) > 0) sq_deg -= hs.degree_in(0);
            for (const auto& x0 : xroots) {
                ProjPoint p(x0, y0, z0);
                if (is_singular_at(partials, p)) record(p);
            }
            unresolved += sq_deg - static_cast<int>(xroots.size());
        }
    }

    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : found) pts.push_back(point_json(p));
    cert.evidence["singular_points"] = pts;
    cert.evidence["unresolved_candidates"] = unresolved;

    if (found.size() == 1 && unresolved == 0) {
        int mult = local_multiplicity(curve.equation, found[0]);
        cert.evidence["point"] = point_json(found[0]);
        cert.evidence["multiplicity"] = mult;
        cert.verdict = "pass";
    } else {
        cert.verdict = "fail";
        if (found.empty() && unresolved == 0) cert.evidence["reason"] = "curve is smooth";
    }
    return cert;
}

std::vector<Certificate> tower_certificates(const ConstructionResult& result) {
    std::vector<Certificate> out;
    const int n = result.config.n;
    const int m = 4 + 2 * n;

    // GraphMatch: computed graph against the expected tree.
    {
        Certificate c;
        c.kind = "GraphMatch";
        DualGraph want = expected_dual_graph(n);
        bool dot_match = result.graph.to_dot() == want.to_dot();
        bool tree = result.graph.is_tree();
        bool sym = has_end_swap_symmetry(result.graph, n);
        DualGraph gb = dual_graph(strict_transform_classes(result.tower_b));
        bool b_match = gb.to_dot() == want.to_dot();
        c.verdict = (dot_match && tree && sym && b_match) ? "pass" : "fail";
        c.evidence["dot"] = result.graph.to_dot();
        c.evidence["vertices"] = result.graph.vertices.size();
        c.evidence["edges"] = result.graph.edges.size();
        c.evidence["tree"] = tree;
        c.evidence["end_swap_symmetry"] = sym;
        c.evidence["transported_tower_matches"] = b_match;
        c.evidence["note"] = cluster_note();
        out.push_back(std::move(c));
    }

    // TowerResolution: both contraction directions and the predicate.
    {
        Certificate c;
        c.kind = "TowerResolution";
        bool ok = true;
        try {
            auto down = contraction_sequence(result.classes, "Etilde_" + std::to_string(m));
            auto up = contraction_sequence(result.classes, "Qtilde");
            c.evidence["contractions_keeping_top"] = down;
            c.evidence["contractions_keeping_conic"] = up;
            ok = down.size() == static_cast<std::size_t>(m) &&
                 up.size() == static_cast<std::size_t>(m);
        } catch (const Error& e) {
            ok = false;
            c.evidence["error"] = e.what();
        }
        bool pred_a = is_minus_one_tower_resolution(result.tower_a, standard_conic());
        bool pred_b = is_minus_one_tower_resolution(result.tower_b, standard_conic());
        c.evidence["tower_predicate_source"] = pred_a;
        c.evidence["tower_predicate_transported"] = pred_b;
        c.verdict = (ok && pred_a && pred_b) ? "pass" : "fail";
        out.push_back(std::move(c));
    }

    // Degree: three independent computations agree.
    {
        Certificate c;
        c.kind = "Degree";
        long expected = 4L * n + 1;
        bool ok = result.curve_c.degree == expected && result.curve_d.degree == expected &&
                  result.homaloidal.degree == expected;
        std::vector<long> zero(result.homaloidal.mults.size(), 0);
        ok = ok && image_degree(1, zero, NetData{result.homaloidal.degree,
                                                 result.homaloidal.mults}) == expected;
        c.evidence["degree"] = expected;
        c.evidence["curve_c"] = poly_to_text(result.curve_c.equation);
        c.evidence["curve_d"] = poly_to_text(result.curve_d.equation);
        nlohmann::json hm = nlohmann::json::array();
        for (long mi : result.homaloidal.mults) hm.push_back(mi);
        c.evidence["homaloidal"] = hm;
        // Three points of each curve, for independent re-checking.
        CurveParam pc = compose_param(result.phi, line_param());
        CurveParam pd = compose_param(result.phi_prime, line_param());
        nlohmann::json samples_c = nlohmann::json::array(), samples_d = nlohmann::json::array();
        for (int t = 1; t <= 3; ++t) {
            samples_c.push_back(point_json(pc.at(Rational(t), Rational(1))));
            samples_d.push_back(point_json(pd.at(Rational(t), Rational(1))));
        }
        c.evidence["points_on_c"] = samples_c;
        c.evidence["points_on_d"] = samples_d;
        c.verdict = ok ? "pass" : "fail";
        out.push_back(std::move(c));
    }
    return out;
}

Certificate complement_iso_certificate(const ConstructionResult& result) {
    Certificate cert;
    cert.kind = "ComplementIso";
    bool ok = true;
    nlohmann::json failed = nlohmann::json::array();

    // (i) sampled witness.
    int good = 0;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : result.psi.samples) {
        if (s.ok) ++good;
        samples.push_back({{"r", s.r.to_string()},
                           {"image", s.image.to_string()},
                           {"lhs", s.lhs.to_string()},
                           {"rhs", s.rhs.to_string()}});
    }
    cert.evidence["witness_samples"] = static_cast<int>(result.psi.samples.size());
    cert.evidence["witness_good"] = good;
    cert.evidence["samples"] = samples;
    if (good != static_cast<int>(result.psi.samples.size()) || good < 20) {
        ok = false;
        failed.push_back("sampled witness");
    }

    // (ii) both maps contract their conic onto Q.
    try {
        PlaneCurve qc = find_contracted_conic(result.phi);
        PlaneCurve qd = find_contracted_conic(result.phi_prime);
        bool both = qc.equation == standard_conic() && qd.equation == standard_conic();
        cert.evidence["contracted_conic_phi"] = poly_to_text(qc.equation);
        cert.evidence["contracted_conic_phi_prime"] = poly_to_text(qd.equation);
        if (!both) {
            ok = false;
            failed.push_back("contracted conic is not Q");
        }
    } catch (const Error& e) {
        ok = false;
        failed.push_back(std::string("contracted conic: ") + e.what());
    }

    // (iii) pullback purity: pullback(., Q) is a pure conic power.
    auto purity = [&](const RationalMap& mp) {
        MPoly conic = standard_conic();
        MPoly pb = pullback(mp, PlaneCurve(conic));
        for (int i = 0; i < mp.degree(); ++i) {
            auto q = pb.divide_exact(conic);
            if (!q) return false;
            pb = *q;
        }
        return pb.is_constant() && pb.constant_value() != 0;
    };
    bool pure_phi = purity(result.phi), pure_phi_prime = purity(result.phi_prime);
    cert.evidence["purity_phi"] = pure_phi;
    cert.evidence["purity_phi_prime"] = pure_phi_prime;
    if (!pure_phi || !pure_phi_prime) {
        ok = false;
        failed.push_back("pullback purity");
    }

    // (iv) polynomial mode: psi fixes Q and contracts only C.
    if (result.psi.polynomial_mode && result.psi.psi) {
        const RationalMap& psi = *result.psi.psi;
        cert.evidence["psi_degree"] = *result.psi.actual_degree;
        cert.evidence["psi_degree_predicted"] = result.psi.predicted_degree;
        MPoly conic = standard_conic();
        MPoly pb = pullback(psi, PlaneCurve(conic));
        auto q = pb.divide_exact(conic);
        bool pure = false;
        long w = 0;
        if (q) {
            MPoly rest = *q;
            while (true) {
                auto qq = rest.divide_exact(result.curve_c.equation);
                if (!qq) break;
                rest = *qq;
                ++w;
            }
            pure = rest.is_constant() && rest.constant_value() != 0;
        }
        cert.evidence["psi_conic_pullback_pure"] = pure;
        cert.evidence["psi_conic_pullback_c_power"] = w;
        if (!pure) {
            ok = false;
            failed.push_back("psi does not fix Q as a divisor");
        }
        // jacobian(psi) = constant * G_C^e: psi contracts only C.
        MPoly jac = jacobian(psi);
        long e = 0;
        while (true) {
            auto qq = jac.divide_exact(result.curve_c.equation);
            if (!qq) break;
            jac = *qq;
            ++e;
        }
        bool jac_pure = jac.is_constant() && jac.constant_value() != 0;
        cert.evidence["psi_jacobian_pure"] = jac_pure;
        cert.evidence["psi_jacobian_c_power"] = e;
        if (!jac_pure) {
            ok = false;
            failed.push_back("psi contracts more than the first curve");
        }
        if (result.config.modular) {
            bool witness = modular_composition_witness(psi, result.phi, result.phi_prime,
                                                       result.f, result.config.seed, 40);
            cert.evidence["psi_composition_identity"] = {
                {"method",
                 "probabilistic identity check (3 word-size primes, 40 points each)"},
                {"ok", witness}};
            if (!witness) {
                ok = false;
                failed.push_back("psi composition identity");
            }
        }
    }

    if (!failed.empty()) cert.evidence["failed"] = failed;
    cert.verdict = ok ? "pass" : "fail";
    return cert;
}

} // namespace cremona
