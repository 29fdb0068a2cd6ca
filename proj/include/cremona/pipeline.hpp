#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cremona/certificate.hpp"
#include "cremona/linsys.hpp"

namespace cremona {

struct ConstructionConfig {
    int n = 2;
    Rational lambda = Rational(2);
    Rational mu = Rational(1);
    std::vector<Rational> a;  // tower parameters, a_n != 0
    bool psi_poly = false;
    bool modular = false;
    std::uint64_t seed = 1;

    // Default parameters: lambda = 2, mu = 1, a = (1, ..., 1).
    static ConstructionConfig defaults(int n);

    void validate() const;  // throws ConfigError
    // The non-equivalence argument needs n >= 2 and a_n, a_{n-1} != 0.
    bool certificate_grade() const;
};

struct PsiWitnessSample {
    ProjPoint r;        // generic source sample
    ProjPoint image;    // phi(r)
    ProjPoint lhs;      // psi-chain applied to phi(r)
    ProjPoint rhs;      // phi'(f(r))
    bool ok = false;
};

struct PsiRecord {
    bool polynomial_mode = false;
    std::vector<PsiWitnessSample> samples;
    long predicted_degree = 0;            // lattice push-pull prediction
    std::optional<RationalMap> psi;       // polynomial mode only
    std::optional<long> actual_degree;    // polynomial mode only
};

struct ConstructionResult {
    ConstructionConfig config;
    ChartTower tower_a;
    ChartTower tower_b;
    TowerClasses classes;
    DualGraph graph;
    HomaloidalClass homaloidal;
    RationalMap f;
    RationalMap phi;
    RationalMap phi_prime;
    PlaneCurve curve_c;
    PlaneCurve curve_d;
    ProjPoint q1_c;
    ProjPoint q1_d;
    PsiRecord psi;
    std::vector<Certificate> certificates;
    std::string verdict;
};

// The degree-2 conic-preserving map (mu^2 (lambda x z + (1 - lambda) y^2)
// : mu y z : z^2).
RationalMap make_f(const Rational& lambda, const Rational& mu);

// The same map with symbolic parameters, over (x, y, z, lambda, mu).
RationalMap make_f_symbolic();

// Normalized Cremona map from the homaloidal net of the tower.
RationalMap build_cremona_map(const ChartTower& tower, HomaloidalClass* homaloidal = nullptr);

// Image curve of the tangent line and the image point of the contracted
// conic (the curve's lone singular point).
std::pair<PlaneCurve, ProjPoint> make_curve(const RationalMap& normalized_map,
                                            long expected_degree);

// Sampled witness (always) and the polynomial composite (optional).
PsiRecord make_psi(const ConstructionConfig& cfg, const RationalMap& phi,
                   const RationalMap& phi_prime, const RationalMap& f,
                   const NetData& net);

// The construction end to end, certificates included.
ConstructionResult run_construction(const ConstructionConfig& cfg);

} // namespace cremona
