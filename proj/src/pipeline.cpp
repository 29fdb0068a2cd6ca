#include "cremona/pipeline.hpp"

#include <algorithm>

#include "cremona/certify.hpp"
#include "cremona/errors.hpp"
#include "cremona/rng.hpp"

namespace cremona {

namespace {

MPoly pvar(const std::string& n) { return MPoly::variable(plane_vars(), n); }

} // namespace

ConstructionConfig ConstructionConfig::defaults(int n) {
    ConstructionConfig cfg;
    cfg.n = n;
    cfg.a.assign(static_cast<std::size_t>(std::max(n, 0)), Rational(1));
    return cfg;
}

void ConstructionConfig::validate() const {
    if (n < 1) throw ConfigError("config: n must be >= 1");
    if (lambda == 0 || lambda == 1) throw ConfigError("config: lambda must differ from 0 and 1");
    if (mu == 0) throw ConfigError("config: mu must be nonzero");
    if (static_cast<int>(a.size()) != n)
        throw ConfigError("config: expected exactly n tower parameters");
    if (a.back() == 0) throw ConfigError("config: a_n must be nonzero");
}

bool ConstructionConfig::certificate_grade() const {
    return n >= 2 && a.back() != 0 && a[a.size() - 2] != 0;
}

RationalMap make_f(const Rational& lambda, const Rational& mu) {
    if (lambda == 0 || lambda == 1) throw ConfigError("make_f: lambda must differ from 0 and 1");
    if (mu == 0) throw ConfigError("make_f: mu must be nonzero");
    MPoly x = pvar("x"), y = pvar("y"), z = pvar("z");
    MPoly f0 = (x * z).scaled(lambda * mu * mu) + (y * y).scaled((1 - lambda) * mu * mu);
    MPoly f1 = (y * z).scaled(mu);
    MPoly f2 = z * z;
    return RationalMap(f0, f1, f2);
}

RationalMap make_f_symbolic() {
    const std::vector<std::string> V = {"x", "y", "z", "lambda", "mu"};
    MPoly x = MPoly::variable(V, "x"), y = MPoly::variable(V, "y"),
          z = MPoly::variable(V, "z"), l = MPoly::variable(V, "lambda"),
          m = MPoly::variable(V, "mu");
    MPoly f0 = m * m * (l * x * z + y * y - l * y * y);
    MPoly f1 = m * y * z;
    MPoly f2 = z * z;
    return RationalMap(f0, f1, f2);
}

RationalMap build_cremona_map(const ChartTower& tower, HomaloidalClass* homaloidal) {
    TowerClasses cls = strict_transform_classes(tower);
    auto contracted =
        contraction_sequence(cls, "Etilde_" + std::to_string(tower.length()));
    HomaloidalClass h = homaloidal_class(cls, contracted);
    if (homaloidal) *homaloidal = h;

    BaseConditions cond;
    cond.degree = static_cast<int>(h.degree);
    cond.tower = tower;
    for (long m : h.mults) cond.multiplicities.push_back(static_cast<int>(m));
    LinearSystem sys = linear_system(cond);
    RationalMap raw = cremona_from_net(sys);
    return normalize_to_Q(raw);
}

std::pair<PlaneCurve, ProjPoint> make_curve(const RationalMap& normalized_map,
                                            long expected_degree) {
    CurveParam image = compose_param(normalized_map, line_param());
    PlaneCurve curve = implicitize(image);
    if (curve.degree != expected_degree)
        throw StructuralError("make_curve: image degree " + std::to_string(curve.degree) +
                              " differs from the lattice prediction " +
                              std::to_string(expected_degree));
    ProjPoint q1 = contracted_conic_image(normalized_map);
    if (!PlaneCurve(standard_conic()).contains(q1))
        throw StructuralError("make_curve: the contracted-conic image misses Q");
    return {curve, q1};
}

namespace {

// Cancels the known geometric factors of the raw psi composite before
// falling back to a full gcd.
std::array<MPoly, 3> cancel_structured(std::array<MPoly, 3> raw,
                                       const std::vector<MPoly>& candidates) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& cand : candidates) {
            if (cand.degree() <= 0) continue;
            while (true) {
                std::array<std::optional<MPoly>, 3> q;
                bool all = true;
                for (int i = 0; i < 3; ++i) {
                    q[i] = raw[i].divide_exact(cand);
                    if (!q[i]) { all = false; break; }
                }
                if (!all) break;
                for (int i = 0; i < 3; ++i) raw[i] = *q[i];
                progress = true;
            }
        }
    }
    return raw;
}

} // namespace

PsiRecord make_psi(const ConstructionConfig& cfg, const RationalMap& phi,
                   const RationalMap& phi_prime, const RationalMap& f,
                   const NetData& net) {
    PsiRecord rec;
    rec.predicted_degree = psi_degree_prediction(net);

    // Sampled witness: the pointwise chain phi' o f o phi^-1 applied to
    // phi(r) must equal phi'(f(r)) exactly.
    Rng rng(cfg.seed);
    MPoly conic = standard_conic();
    int draws = 0;
    while (static_cast<int>(rec.samples.size()) < 20 && draws < 400) {
        ++draws;
        ProjPoint r(rng.next_small_rational(40), rng.next_small_rational(40), Rational(1));
        if (conic.eval({r.c[0], r.c[1], r.c[2]}) == 0) continue;  // stay off Q
        try {
            ProjPoint u = apply_map(phi, r);
            ProjPoint v = pointwise_preimage(phi, u);
            ProjPoint w = apply_map(f, v);
            ProjPoint lhs = apply_map(phi_prime, w);
            ProjPoint rhs = apply_map(phi_prime, apply_map(f, r));
            rec.samples.push_back({r, u, lhs, rhs, lhs == rhs});
        } catch (const Error&) {
            continue;  // base locus or non-generic sample: redraw
        }
    }
    if (rec.samples.size() < 20)
        throw StructuralError("make_psi: could not collect 20 generic samples");

    if (cfg.psi_poly) {
        rec.polynomial_mode = true;
        RationalMap phi_inv = inverse_map(phi);
        RationalMap inner = compose(f, phi_inv);
        std::map<std::string, MPoly> sub = {{"x", inner.coord(0)},
                                            {"y", inner.coord(1)},
                                            {"z", inner.coord(2)}};
        std::array<MPoly, 3> raw;
        for (int i = 0; i < 3; ++i) raw[i] = poly_substitute(phi_prime.coord(i), sub);

        // Expected common factors: the curve contracted by phi^-1 and the
        // conic; fall back to the generic cancellation if they are not
        // enough.
        PlaneCurve c_curve = implicitize(compose_param(phi, line_param()));
        std::vector<MPoly> candidates = {c_curve.equation, conic, pvar("z")};
        raw = cancel_structured(raw, candidates);
        if (!certified_coprime({raw[0], raw[1], raw[2]}))
            throw StructuralError("make_psi: residual common factor after cancellation");
        RationalMap psi(raw[0], raw[1], raw[2]);
        rec.actual_degree = psi.degree();
        rec.psi = std::move(psi);
    }
    return rec;
}

ConstructionResult run_construction(const ConstructionConfig& cfg) {
    cfg.validate();

    ChartTower tower_a = build_tower(cfg.n, cfg.a);
    ChartTower tower_b = transport_tower(tower_a, cfg.lambda, cfg.mu);

    TowerClasses classes = strict_transform_classes(tower_a);
    DualGraph graph = dual_graph(classes);

    HomaloidalClass hom;
    RationalMap phi = build_cremona_map(tower_a, &hom);
    RationalMap phi_prime = build_cremona_map(tower_b);
    if (cfg.certificate_grade() && phi == phi_prime)
        throw StructuralError("run_construction: the two maps coincide");
    RationalMap f = make_f(cfg.lambda, cfg.mu);

    const long expected_degree = 4L * cfg.n + 1;
    if (hom.degree != expected_degree)
        throw StructuralError("run_construction: homaloidal degree mismatch");
    std::vector<long> no_mults(hom.mults.size(), 0);
    if (image_degree(1, no_mults, NetData{hom.degree, hom.mults}) != expected_degree)
        throw StructuralError("run_construction: transported line degree mismatch");

    auto [curve_c, q1_c] = make_curve(phi, expected_degree);
    auto [curve_d, q1_d] = make_curve(phi_prime, expected_degree);
    if (cfg.certificate_grade() && curve_c == curve_d)
        throw StructuralError("run_construction: the two curves coincide");

    PsiRecord psi = make_psi(cfg, phi, phi_prime, f, NetData{hom.degree, hom.mults});

    ConstructionResult result{cfg,
                              tower_a,
                              tower_b,
                              classes,
                              graph,
                              hom,
                              f,
                              phi,
                              phi_prime,
                              curve_c,
                              curve_d,
                              q1_c,
                              q1_d,
                              std::move(psi),
                              {},
                              ""};

    auto towers = tower_certificates(result);
    result.certificates.insert(result.certificates.end(), towers.begin(), towers.end());
    result.certificates.push_back(unicuspidal_certificate(result.curve_c, "C"));
    result.certificates.push_back(unicuspidal_certificate(result.curve_d, "D"));
    result.certificates.push_back(complement_iso_certificate(result));
    result.certificates.push_back(
        nonequivalence_certificate(cfg, result.tower_a, result.tower_b));

    bool all_pass = true;
    bool inconclusive = false;
    std::string failed_kind;
    for (const auto& c : result.certificates) {
        if (c.verdict == "fail" && failed_kind.empty()) {
            all_pass = false;
            failed_kind = c.kind;
        }
        if (c.verdict == "inconclusive") inconclusive = true;
    }
    if (!all_pass) result.verdict = "FAILED (" + failed_kind + ")";
    else if (inconclusive) result.verdict = "INCONCLUSIVE (n < 2)";
    else result.verdict = "COUNTEREXAMPLE";
    return result;
}

} // namespace cremona
